#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lebmaps/error.hpp"
#include "lebmaps/extension.hpp"
#include "lebmaps/io.hpp"
#include "support/corpus.hpp"
#include "support/tempdir.hpp"

using namespace lebmaps;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("numbers carry twelve significant digits") {
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(2.0) == "2");
}

TEST_CASE("map json round trip is exact") {
  const CircleMap m = rotate_conjugate(extend_by_transport(corpus::sin_branch(0.4, 0.05, 32)).map, 0.3);
  const std::string text = io::map_to_json(m);
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j.at("branch_point").get<double>() == m.branch_point());
  CHECK(j.at("rotation_offset").get<double>() == doctest::Approx(0.3));
  CHECK(j.at("branch1").size() == m.branch1().size());
  CHECK(j.at("branch1")[0].size() == 3);
  CHECK(io::map_from_json(text) == m);
}

TEST_CASE("branch and gamma json round trips") {
  const BranchFunction b = corpus::sin_branch(0.5, 0.02, 16);
  CHECK(io::branch_from_json(io::branch_to_json(b)) == b);
  const GammaElement g = make_gamma(0.2, 0.7, canonical_branch({0.5, 2.5}));
  const GammaElement back = io::gamma_from_json(io::gamma_to_json(g));
  CHECK(back.x == g.x);
  CHECK(back.y == g.y);
  CHECK(back.profile == g.profile);
}

TEST_CASE("malformed json is a parse error") {
  CHECK(code_of([] { io::map_from_json("{not json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::map_from_json(R"({"branch1": [[0,0,2],[0.5,1,2]]})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::branch_from_json(R"({"knots": [[0,0]]})"); }) == ErrorCode::ParseError);
  // knots that parse but do not form a branch keep their own code
  CHECK(code_of([] { io::branch_from_json(R"({"knots": [[0,0,1.0005],[0.5,1,2]]})"); }) == ErrorCode::NotExpanding);
  // stated branch point disagrees with the knots
  const std::string bad = R"({"branch_point": 0.4, "rotation_offset": 0,
    "branch1": [[0,0,2],[0.5,1,2]], "branch2": [[0.5,0,2],[1,1,2]]})";
  CHECK(code_of([&] { io::map_from_json(bad); }) == ErrorCode::ParseError);
}

TEST_CASE("doubling map csv") {
  const auto rows = lines(io::map_csv(doubling_map(), 4));
  const std::vector<std::string> expect = {"x,f,df", "0,0,2", "0.25,0.5,2", "0.5,1,2", "0.5,0,2", "0.75,0.5,2", "1,1,2"};
  CHECK(rows == expect);
}

TEST_CASE("csv with the branch point between nodes") {
  const CircleMap m = piecewise_linear_map(0.3);
  const auto rows = lines(io::map_csv(m, 4));
  CHECK(rows.size() == 1 + 4 + 1 + 2);
  CHECK(rows[2] == "0.25," + io::format_number(0.25 / 0.3) + "," + io::format_number(1.0 / 0.3));
  CHECK(rows[3] == "0.3,1," + io::format_number(1.0 / 0.3));
  CHECK(rows[4] == "0.3,0," + io::format_number(1.0 / 0.7));
}

TEST_CASE("csv values match direct evaluation") {
  const CircleMap m = extend_by_transport(corpus::sin_branch(0.5, 0.1)).map;
  const auto rows = lines(io::map_csv(m, 1024));
  int checked = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    double x = 0, f = 0, df = 0;
    REQUIRE(std::sscanf(rows[r].c_str(), "%lf,%lf,%lf", &x, &f, &df) == 3);
    if (x == 0.5) continue;
    const BranchFunction& b = x < 0.5 ? m.branch1() : m.branch2();
    CHECK(f == doctest::Approx(b.value(x)).epsilon(1e-11));
    CHECK(df == doctest::Approx(b.derivative(x)).epsilon(1e-11));
    ++checked;
  }
  CHECK(checked == 1024);
}

TEST_CASE("density and history csv") {
  const auto d = lines(io::density_csv(DensityGrid::constant(2)));
  CHECK(d == std::vector<std::string>{"x,h", "0,1", "0.5,1", "1,1"});
  const std::vector<double> res = {0.5, 0.25};
  CHECK(lines(io::history_csv(res)) == std::vector<std::string>{"iter,residual", "0,0.5", "1,0.25"});
}

TEST_CASE("files") {
  support::TempDir dir;
  const CircleMap m = doubling_map(0.125);
  io::write_map(dir / "nested/m.json", m);
  CHECK(io::read_map(dir / "nested/m.json") == m);
  const BranchFunction b = corpus::constant_slope(3.0);
  io::write_branch(dir / "b.json", b);
  CHECK(io::read_branch(dir / "b.json") == b);
  CHECK(code_of([&] { io::read_text(dir / "missing.json"); }) == ErrorCode::ParseError);
}

TEST_CASE("path export") {
  support::TempDir dir;
  const HomotopyPath loop = generator_loop(8);
  io::write_path(dir.path(), loop);
  for (int k = 0; k <= 8; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "sample_%04d.json", k);
    CHECK(io::read_map(dir / name) == loop.samples[k]);
  }
  const auto idx = lines(io::read_text(dir / "index.csv"));
  REQUIRE(idx.size() == 10);
  CHECK(idx[0] == "k,t,preservation_residual,gluing_residual,branch_x,branch_y");
  CHECK(idx[3].rfind("2,0.25,", 0) == 0);
}
