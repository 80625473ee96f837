#include "lebmaps/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lebmaps/error.hpp"

namespace lebmaps::io {
namespace {

using nlohmann::json;

json knots_json(const BranchFunction& b) {
  json arr = json::array();
  for (const Knot& k : b.knots()) arr.push_back({k.x, k.y, k.dy});
  return arr;
}

std::vector<Knot> knots_from(const json& arr, const char* field) {
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, std::string(field) + " must be an array of [x, y, dy]");
  std::vector<Knot> out;
  for (const json& k : arr) {
    if (!k.is_array() || k.size() != 3 || !k[0].is_number() || !k[1].is_number() || !k[2].is_number())
      throw Error(ErrorCode::ParseError, std::string(field) + " entries must be [x, y, dy] number triples");
    out.push_back({k[0].get<double>(), k[1].get<double>(), k[2].get<double>()});
  }
  return out;
}

json parse(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

double number(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) throw Error(ErrorCode::ParseError, std::string("missing number ") + field);
  return j[field].get<double>();
}

double margin_of(const json& j) { return j.contains("margin") ? number(j, "margin") : kDefaultMargin; }

void row(std::ostringstream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string map_to_json(const CircleMap& m) {
  json j;
  j["branch_point"] = m.branch_point();
  j["rotation_offset"] = m.rotation_offset();
  j["margin"] = m.margin();
  j["branch1"] = knots_json(m.branch1());
  j["branch2"] = knots_json(m.branch2());
  return j.dump(1);
}

CircleMap map_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("branch1") || !j.contains("branch2")) throw Error(ErrorCode::ParseError, "map needs branch1 and branch2");
  const double margin = margin_of(j);
  const double theta = j.contains("rotation_offset") ? number(j, "rotation_offset") : 0.0;
  CircleMap m(build_branch(knots_from(j["branch1"], "branch1"), margin),
              build_branch(knots_from(j["branch2"], "branch2"), margin), theta);
  if (j.contains("branch_point") && std::abs(number(j, "branch_point") - m.branch_point()) > kFullBranchTol)
    throw Error(ErrorCode::ParseError, "branch_point does not match the end of branch1");
  return m;
}

std::string branch_to_json(const BranchFunction& b) {
  json j;
  j["knots"] = knots_json(b);
  j["margin"] = b.margin();
  return j.dump(1);
}

BranchFunction branch_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("knots")) throw Error(ErrorCode::ParseError, "branch needs knots");
  return build_branch(knots_from(j["knots"], "knots"), margin_of(j));
}

std::string gamma_to_json(const GammaElement& g) {
  json j;
  j["x"] = g.x;
  j["y"] = g.y;
  j["profile"] = knots_json(g.profile);
  j["margin"] = g.profile.margin();
  return j.dump(1);
}

GammaElement gamma_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("profile")) throw Error(ErrorCode::ParseError, "element needs a profile");
  return make_gamma(number(j, "x"), number(j, "y"), build_branch(knots_from(j["profile"], "profile"), margin_of(j)));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
}

CircleMap read_map(const std::filesystem::path& path) { return map_from_json(read_text(path)); }
BranchFunction read_branch(const std::filesystem::path& path) { return branch_from_json(read_text(path)); }
void write_map(const std::filesystem::path& path, const CircleMap& m) { write_text(path, map_to_json(m) + "\n"); }
void write_branch(const std::filesystem::path& path, const BranchFunction& b) {
  write_text(path, branch_to_json(b) + "\n");
}

std::string map_csv(const CircleMap& m, std::size_t nodes) {
  if (nodes < 1) throw Error(ErrorCode::GridTooCoarse, "export needs at least one cell");
  const BranchFunction& b1 = m.branch1();
  const BranchFunction& b2 = m.branch2();
  const double a = m.branch_point();
  std::ostringstream os;
  os << "x,f,df\n";
  bool emitted = false;
  auto emit_branch_point = [&] {
    row(os, {a, b1.value_hi(), b1.dys().back()});
    row(os, {a, b2.value_lo(), b2.dys().front()});
    emitted = true;
  };
  for (std::size_t i = 0; i <= nodes; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(nodes);
    if (!emitted && x >= a) {
      emit_branch_point();
      if (x == a) continue;
    }
    const BranchFunction& b = x < a ? b1 : b2;
    row(os, {x, b.value(x), b.derivative(x)});
  }
  return os.str();
}

std::string density_csv(const DensityGrid& h) {
  std::ostringstream os;
  os << "x,h\n";
  for (std::size_t i = 0; i <= h.cells(); ++i) row(os, {h.node(i), h.values()[i]});
  return os.str();
}

std::string history_csv(std::span<const double> residuals) {
  std::ostringstream os;
  os << "iter,residual\n";
  for (std::size_t k = 0; k < residuals.size(); ++k) os << k << ',' << format_number(residuals[k]) << '\n';
  return os.str();
}

void write_path(const std::filesystem::path& dir, const HomotopyPath& path) {
  std::filesystem::create_directories(dir);
  std::ostringstream index;
  index << "k,t,preservation_residual,gluing_residual,branch_x,branch_y\n";
  for (std::size_t k = 0; k < path.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "sample_%04zu.json", k);
    write_map(dir / name, path.samples[k]);
    const auto [bx, by] = branch_points(path.samples[k]);
    index << k << ',';
    row(index, {path.times[k], path.reports[k].preservation_residual, path.reports[k].gluing_residual, bx, by});
  }
  write_text(dir / "index.csv", index.str());
}

}  // namespace lebmaps::io
