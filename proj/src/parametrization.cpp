#include "lebmaps/parametrization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lebmaps/error.hpp"
#include "piecewise_lift.hpp"

namespace lebmaps {
namespace {

constexpr int kCrossCheckHalvings = 4;

// Lift of a normalized map over [0, 2].
detail::PiecewiseLift double_lift(const CircleMap& m) {
  const std::vector<Knot> b1 = m.branch1().knots();
  const std::vector<Knot> b2 = m.branch2().knots();
  detail::PiecewiseLift lift;
  lift.append(b1);
  lift.append(b2, 0.0, 1.0);
  lift.append(b1, 1.0, 2.0);
  lift.append(b2, 1.0, 3.0);
  return lift;
}

// u in [0,1) with lift(u) - u = target, target in [0,1).
double solve_offset(const detail::PiecewiseLift& lift, double target) {
  if (target == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (lift.at(mid).y - mid < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Steep profiles can need a finer step than requested; halve a few times.
ExtensionResult cross_check_extension(const BranchFunction& profile, double step) {
  for (int attempt = 0;; ++attempt, step *= 0.5) {
    try {
      return extend_by_ode(profile, step);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::StepTooLarge || attempt == kCrossCheckHalvings) throw;
    }
  }
}

}  // namespace

void check_gamma(const GammaElement& g) {
  std::ostringstream os;
  os.precision(12);
  if (!std::isfinite(g.x) || !std::isfinite(g.y)) throw Error(ErrorCode::NotInSpace, "arc endpoints must be finite");
  const double len = wrap01(g.y - g.x);
  if (!(len > 0.0)) throw Error(ErrorCode::NotInSpace, "arc endpoints coincide");
  const BranchFunction& p = g.profile;
  if (p.lo() != 0.0 || std::abs(p.hi() - len) > kGammaArcTol) {
    os << "profile domain [" << p.lo() << ", " << p.hi() << "] does not match arc length " << len;
    throw Error(ErrorCode::NotInSpace, os.str());
  }
  // the fixed point x + t solves profile(t) - t = x mod 1, and profile(t) - t fills [0, 1 - len]
  const double start = wrap01(g.x);
  if (start > 1.0 - len + kGammaArcTol && start < 1.0 - kGammaArcTol) {
    os << "arc [" << g.x << ", " << g.y << "] cannot contain the fixed point (x mod 1 > 1 - length)";
    throw Error(ErrorCode::NotInSpace, os.str());
  }
  if (std::abs(p.value_lo()) > kFullBranchTol || std::abs(p.value_hi() - 1.0) > kFullBranchTol)
    throw Error(ErrorCode::NotInSpace, "profile must map the arc onto [0,1]");
  if (!p.expanding()) throw Error(ErrorCode::NotInSpace, "profile is not expanding");
  const GluingCheck gl = check_gluing(p, kGammaGluingTol);
  if (!gl.ok) {
    os << "gluing residual " << gl.residual << " > " << kGammaGluingTol;
    throw Error(ErrorCode::NotInSpace, os.str());
  }
}

GammaElement make_gamma(double x, double y, BranchFunction profile) {
  GammaElement g{x, y, std::move(profile)};
  check_gamma(g);
  return g;
}

CircleMap gamma_to_map(const GammaElement& g, const GammaOptions& options) {
  check_gamma(g);
  const ExtensionResult base = extend_by_transport(g.profile);
  if (options.cross_check) {
    const ExtensionResult ode = cross_check_extension(g.profile, options.ode_step);
    const double diff = branch_sup_difference(base.map.branch2(), ode.map.branch2());
    if (diff > options.cross_check_tol) {
      std::ostringstream os;
      os.precision(12);
      os << "ode and transport extensions differ by " << diff;
      throw Error(ErrorCode::NoConvergence, os.str());
    }
  }

  // Map z -> E(z - x); re-base the lift at its fixed point p = x + u_p.
  const double x = wrap01(g.x);
  const detail::PiecewiseLift lift = double_lift(base.map);
  const double up = solve_offset(lift, x);
  std::vector<Knot> n = lift.slice(up, up + 1.0);
  detail::shift_knots(n, -up, -(x + up));
  n.front().x = 0.0;
  n.front().y = 0.0;
  n.back().x = 1.0;
  n.back().y = 2.0;

  detail::PiecewiseLift normal;
  normal.append(n);
  const double a = normal.solve(1.0);
  std::vector<Knot> b1 = normal.slice(0.0, a);
  std::vector<Knot> b2 = normal.slice(a, 1.0);
  detail::shift_knots(b2, 0.0, -1.0);
  b1.front() = {0.0, 0.0, b1.front().dy};
  b1.back() = {a, 1.0, b1.back().dy};
  b2.front() = {a, 0.0, b2.front().dy};
  b2.back() = {1.0, 1.0, b2.back().dy};
  const double margin = g.profile.margin();
  return CircleMap(build_branch(b1, margin), build_branch(b2, margin), wrap01(x + up));
}

GammaElement map_to_gamma(const CircleMap& m, const Tolerances& tol) {
  const ValidationReport report = validate_map(m);
  if (!report.in_space(tol)) {
    std::ostringstream os;
    os.precision(12);
    os << "map is not in the space: preservation " << report.preservation_residual << ", gluing "
       << report.gluing_residual << ", min derivative " << report.min_derivative;
    throw Error(ErrorCode::NotInSpace, os.str());
  }
  const double theta = m.rotation_offset();
  const double target = 1.0 - theta;
  const double u1 = m.branch1().inverse(std::clamp(target, 0.0, 1.0));
  const double u2 = m.branch2().inverse(std::clamp(target, 0.0, 1.0));
  const double len = 1.0 + u1 - u2;

  const detail::PiecewiseLift lift = double_lift(m);
  std::vector<Knot> p = lift.slice(u2, u2 + len);
  detail::shift_knots(p, -u2, -(2.0 - theta));
  p.front().x = 0.0;
  p.front().y = 0.0;
  p.back().x = len;
  p.back().y = 1.0;
  const auto [x, y] = branch_points(m);
  return GammaElement{x, y, build_branch(p, m.margin())};
}

BranchFunction normalize_profile(const GammaElement& g) {
  const double len = g.arc_length();
  const double scale = 0.5 / len;
  std::vector<Knot> k = g.profile.knots();
  for (Knot& kn : k) {
    kn.x *= scale;
    kn.dy /= scale;
  }
  k.front().x = 0.0;
  k.back().x = 0.5;
  return build_monotone_branch(k);
}

}  // namespace lebmaps
