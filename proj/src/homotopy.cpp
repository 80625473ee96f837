#include "lebmaps/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "lebmaps/error.hpp"
#include "lebmaps/extension.hpp"

namespace lebmaps {
namespace {

constexpr double kDegenerateGap = 1e-12;
constexpr std::size_t kGapGrid = 1000;
constexpr std::size_t kValidityOversample = 4;
constexpr double kMaxBranchPointStep = 0.25;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

CanonicalParams lerp(const CanonicalParams& p0, const CanonicalParams& p1, double t) noexcept {
  if (t == 0.0) return p0;
  if (t == 1.0) return p1;
  return {(1.0 - t) * p0.a + t * p1.a, (1.0 - t) * p0.c + t * p1.c};
}

// First t in [0,1] at which the straight segment leaves the family, if any.
std::optional<double> segment_exit(const CanonicalParams& p0, const CanonicalParams& p1, std::size_t samples) {
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(samples);
    try {
      canonical_branch(lerp(p0, p1, t));
    } catch (const Error&) {
      return t;
    }
  }
  return std::nullopt;
}

double branch_gap(const BranchFunction& b0, const BranchFunction& b1) {
  const double a = std::min(b0.hi(), b1.hi());
  double gap = std::abs(b0.hi() - b1.hi());
  for (std::size_t i = 0; i <= kGapGrid; ++i) {
    const double u = a * static_cast<double>(i) / kGapGrid;
    gap = std::max(gap, std::abs(b0.value(u) - b1.value(u)) + std::abs(b0.derivative(u) - b1.derivative(u)));
  }
  return gap;
}

double signed_step(double from, double to) noexcept {
  const double d = to - from;
  return d - std::round(d);
}

struct LegPlan {
  LegKind kind;
  CanonicalParams p0, p1;
  bool active;
};

}  // namespace

double canonical_middle(const CanonicalParams& p) noexcept { return 3.0 / p.a - p.c - p.c / (p.c - 1.0); }

bool canonical_valid(const CanonicalParams& p) noexcept {
  return std::isfinite(p.a) && std::isfinite(p.c) && p.a > 0.0 && p.a < 1.0 && p.c > 1.0 &&
         canonical_middle(p) > 1.0;
}

std::pair<double, double> canonical_slope_range(double a) noexcept {
  // c + c/(c-1) < 3/a - 1  <=>  c^2 - k c + k < 0 with k = 3/a - 1
  const double k = 3.0 / a - 1.0;
  const double disc = k * k - 4.0 * k;
  if (!(disc > 0.0)) return {2.0, 2.0};
  const double r = std::sqrt(disc);
  return {0.5 * (k - r), 0.5 * (k + r)};
}

double canonical_derivative(const CanonicalParams& p, double u) noexcept {
  const double t = u / p.a;
  const double s = 1.0 - t;
  return p.c * s * s + canonical_middle(p) * 2.0 * t * s + p.c / (p.c - 1.0) * t * t;
}

BranchFunction canonical_branch(const CanonicalParams& p, double margin) {
  if (!canonical_valid(p))
    throw Error(ErrorCode::OutsideValidity,
                "canonical parameters (a=" + fmt(p.a) + ", c=" + fmt(p.c) + ") give m=" + fmt(canonical_middle(p)));
  const Knot knots[] = {{0.0, 0.0, p.c}, {p.a, 1.0, p.c / (p.c - 1.0)}};
  try {
    return build_branch(knots, margin);
  } catch (const Error& e) {
    throw Error(ErrorCode::OutsideValidity, e.what());
  }
}

BranchFunction linear_branch_leg(const BranchFunction& b0, const BranchFunction& b1, double t) {
  if (b0.lo() != b1.lo() || std::abs(b0.hi() - b1.hi()) > kFullBranchTol)
    throw Error(ErrorCode::EndpointMismatch, "branches have different domains");
  const double d0 = std::abs(b0.dys().front() - b1.dys().front());
  const double d1 = std::abs(b0.dys().back() - b1.dys().back());
  if (d0 > kEndpointMatchTol || d1 > kEndpointMatchTol)
    throw Error(ErrorCode::EndpointMismatch, "endpoint slopes differ by " + fmt(std::max(d0, d1)));
  if (t == 0.0) return b0;
  if (t == 1.0) return b1;

  std::vector<double> xs(b0.xs().begin(), b0.xs().end());
  xs.insert(xs.end(), b1.xs().begin() + 1, b1.xs().end() - 1);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [](double p, double q) { return q - p <= 1e-14; }), xs.end());
  xs.back() = b0.hi();

  std::vector<Knot> knots;
  knots.reserve(xs.size());
  for (double x : xs)
    knots.push_back({x, (1.0 - t) * b0.value(x) + t * b1.value(x),
                     (1.0 - t) * b0.derivative(x) + t * b1.derivative(x)});
  knots.front().y = 0.0;
  knots.back().y = 1.0;
  return build_branch(knots, std::min(b0.margin(), b1.margin()));
}

BranchFunction slide_leg(const CanonicalParams& p0, const CanonicalParams& p1, double t) {
  const CanonicalParams p = lerp(p0, p1, t);
  try {
    return canonical_branch(p);
  } catch (const Error& e) {
    throw Error(ErrorCode::PathLeavesValidity, "slide leaves the canonical family at t=" + fmt(t) + ": " + e.what());
  }
}

CircleMap rotate_conjugate(const CircleMap& m, double theta) {
  return CircleMap(m.branch1(), m.branch2(), wrap01(m.rotation_offset() + theta));
}

std::string_view to_string(LegKind kind) noexcept {
  switch (kind) {
    case LegKind::Rotate: return "rotate";
    case LegKind::ToCanonical: return "to_canonical";
    case LegKind::Slide: return "slide";
    case LegKind::ToTarget: return "to_target";
  }
  return "unknown";
}

double HomotopyPath::max_step(std::size_t grid) const {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k)
    worst = std::max(worst, c1_distance(samples[k], samples[k + 1], grid));
  return worst;
}

bool HomotopyPath::all_valid(double preservation) const noexcept {
  Tolerances tol;
  tol.preservation = preservation;
  return std::all_of(reports.begin(), reports.end(), [&](const ValidationReport& r) { return r.in_space(tol); });
}

HomotopyPath build_path(const CircleMap& g, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::OutOfDomain, "path needs at least one step");
  const ValidationReport start_report = validate_map(g);
  if (!start_report.in_space())
    throw Error(ErrorCode::NotInSpace, "start map fails validation: preservation " +
                                           fmt(start_report.preservation_residual) + ", gluing " +
                                           fmt(start_report.gluing_residual));

  const double theta = g.rotation_offset();
  const double turn = theta <= 0.5 ? -theta : 1.0 - theta;
  const BranchFunction& b0 = g.branch1();
  const CanonicalParams start{b0.hi(), b0.dys().front()};
  const CanonicalParams target{0.5, 2.0};

  BranchFunction start_canonical = [&] {
    try {
      return canonical_branch(start);
    } catch (const Error& e) {
      throw Error(ErrorCode::PathLeavesValidity, std::string("first branch has no canonical partner: ") + e.what());
    }
  }();

  std::vector<LegPlan> plan;
  plan.push_back({LegKind::Rotate, start, start, theta != 0.0});
  plan.push_back({LegKind::ToCanonical, start, start, branch_gap(b0, start_canonical) > kDegenerateGap});
  if (!(start == target)) {
    const std::size_t check = kValidityOversample * steps;
    if (!segment_exit(start, target, check)) {
      plan.push_back({LegKind::Slide, start, target, true});
    } else {
      const CanonicalParams waypoint{0.5, start.c};
      if (const auto t = segment_exit(start, waypoint, check))
        throw Error(ErrorCode::PathLeavesValidity, "slide to waypoint (0.5, " + fmt(start.c) +
                                                       ") leaves the canonical family at t=" + fmt(*t));
      if (const auto t = segment_exit(waypoint, target, check))
        throw Error(ErrorCode::PathLeavesValidity, "slide from waypoint to (0.5, 2) leaves the canonical family at t=" +
                                                       fmt(*t));
      if (!(start == waypoint)) plan.push_back({LegKind::Slide, start, waypoint, true});
      plan.push_back({LegKind::Slide, waypoint, target, true});
    }
  } else {
    plan.push_back({LegKind::Slide, start, target, false});
  }
  plan.push_back({LegKind::ToTarget, target, target, false});

  const auto active = static_cast<std::size_t>(
      std::count_if(plan.begin(), plan.end(), [](const LegPlan& l) { return l.active; }));

  HomotopyPath path;
  std::vector<const LegPlan*> order;
  double t = 0.0;
  for (const LegPlan& l : plan) {
    const double width = l.active ? 1.0 / static_cast<double>(active) : 0.0;
    path.legs.push_back({l.kind, t, std::min(1.0, t + width), !l.active});
    t = std::min(1.0, t + width);
    if (l.active) order.push_back(&l);
  }

  auto sample = [&](const LegPlan& l, double s) -> CircleMap {
    switch (l.kind) {
      case LegKind::Rotate:
        return s == 1.0 ? CircleMap(g.branch1(), g.branch2(), 0.0) : rotate_conjugate(g, s * turn);
      case LegKind::ToCanonical:
        return extend_by_transport(linear_branch_leg(b0, start_canonical, s)).map;
      case LegKind::Slide:
        return extend_by_transport(slide_leg(l.p0, l.p1, s)).map;
      case LegKind::ToTarget:
        break;
    }
    return doubling_map();
  };

  if (active == 0) {
    path.times.push_back(0.0);
    path.samples.push_back(g);
  } else {
    for (std::size_t k = 0; k <= steps; ++k) {
      const double tk = static_cast<double>(k) / static_cast<double>(steps);
      path.times.push_back(tk);
      if (k == 0) {
        path.samples.push_back(g);
        continue;
      }
      const double scaled = tk * static_cast<double>(active);
      const std::size_t j = std::min(static_cast<std::size_t>(scaled), active - 1);
      const double s = k == steps ? 1.0 : scaled - static_cast<double>(j);
      path.samples.push_back(sample(*order[j], s));
    }
  }
  path.reports.reserve(path.samples.size());
  for (const CircleMap& m : path.samples) path.reports.push_back(validate_map(m));
  return path;
}

HomotopyPath generator_loop(std::size_t steps) {
  if (steps < kMinLoopSteps) throw Error(ErrorCode::OutOfDomain, "generator loop needs at least 8 steps");
  HomotopyPath path;
  const CircleMap d = doubling_map();
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(steps);
    path.times.push_back(t);
    path.samples.push_back(rotate_conjugate(d, t));
    path.reports.push_back(validate_map(path.samples.back()));
  }
  path.legs.push_back({LegKind::Rotate, 0.0, 1.0, false});
  return path;
}

HomotopyPath concatenate(const HomotopyPath& p, const HomotopyPath& q) {
  HomotopyPath out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.times.push_back(0.5 * p.times[k]);
    out.samples.push_back(p.samples[k]);
    out.reports.push_back(p.reports[k]);
  }
  const bool join = !p.samples.empty() && !q.samples.empty() &&
                    c1_distance(p.samples.back(), q.samples.front()) <= kPathEndpointTol;
  for (std::size_t k = join ? 1 : 0; k < q.size(); ++k) {
    out.times.push_back(0.5 + 0.5 * q.times[k]);
    out.samples.push_back(q.samples[k]);
    out.reports.push_back(q.reports[k]);
  }
  for (PathLeg l : p.legs) {
    l.t0 *= 0.5;
    l.t1 *= 0.5;
    out.legs.push_back(l);
  }
  for (PathLeg l : q.legs) {
    l.t0 = 0.5 + 0.5 * l.t0;
    l.t1 = 0.5 + 0.5 * l.t1;
    out.legs.push_back(l);
  }
  return out;
}

namespace {

void require_closed(const HomotopyPath& path) {
  if (path.samples.empty()) throw Error(ErrorCode::NotClosed, "empty path");
  const double gap = c1_distance(path.samples.front(), path.samples.back());
  if (gap > kPathEndpointTol) throw Error(ErrorCode::NotClosed, "endpoints differ by " + fmt(gap));
}

}  // namespace

long winding_number(const HomotopyPath& path) {
  require_closed(path);
  auto [px, py] = branch_points(path.samples.front());
  double total = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto [x, y] = branch_points(path.samples[k]);
    const double sx = signed_step(px, x), sy = signed_step(py, y);
    const double wx = signed_step(px, y), wy = signed_step(py, x);
    const bool swap = std::max(std::abs(wx), std::abs(wy)) < std::max(std::abs(sx), std::abs(sy));
    const double dx = swap ? wx : sx, dy = swap ? wy : sy;
    if (std::max(std::abs(dx), std::abs(dy)) >= kMaxBranchPointStep)
      throw Error(ErrorCode::SamplingTooCoarse, "branch point jumps by " + fmt(std::max(std::abs(dx), std::abs(dy))) +
                                                    " between samples " + std::to_string(k - 1) + " and " +
                                                    std::to_string(k));
    total += dx + dy;
    px = swap ? y : x;
    py = swap ? x : y;
  }
  return std::lround(total);
}

long fixed_point_winding(const HomotopyPath& path) {
  require_closed(path);
  double total = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const double d = signed_step(path.samples[k - 1].rotation_offset(), path.samples[k].rotation_offset());
    if (std::abs(d) >= kMaxBranchPointStep)
      throw Error(ErrorCode::SamplingTooCoarse, "fixed point jumps by " + fmt(std::abs(d)));
    total += d;
  }
  return std::lround(total);
}

}  // namespace lebmaps
