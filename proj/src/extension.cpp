#include "lebmaps/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lebmaps/error.hpp"
#include "piecewise_lift.hpp"

namespace lebmaps {
namespace {

constexpr double kTransportValueTol = 2e-13;
constexpr double kTransportSlopeTol = 5e-9;
constexpr double kResampleValueTol = 1e-12;
constexpr double kResampleSlopeTol = 5e-9;
// the knot cap never relaxes the slope tolerance past this
constexpr double kResampleSlopeCeiling = 5e-9;
constexpr int kMaxRefineDepth = 40;
// below this width rounding in the knot positions dominates the slope check
constexpr double kMinPieceWidth = 1e-8;
constexpr int kMaxOdeRefineDepth = 6;
// above the integrator's own noise between a step and two half steps
constexpr double kOdeRefineValueTol = 1e-11;

void require_full_expanding(const BranchFunction& f1) {
  if (f1.lo() != 0.0 || !(f1.hi() > 0.0 && f1.hi() < 1.0) || std::abs(f1.value_lo()) > kFullBranchTol ||
      std::abs(f1.value_hi() - 1.0) > kFullBranchTol) {
    std::ostringstream os;
    os.precision(17);
    os << "first branch must map [0,a] onto [0,1]; got [" << f1.lo() << ", " << f1.hi() << "] -> ["
       << f1.value_lo() << ", " << f1.value_hi() << "]";
    throw Error(ErrorCode::NotFullBranch, os.str());
  }
  if (!f1.expanding() || !(f1.min_derivative() > 1.0))
    throw Error(ErrorCode::NotExpanding, "first branch is not expanding");
}

double slope_from(double c) { return c / (c - 1.0); }

// Exact transport knot at value y: (a + y - f1^-1(y), y, c/(c-1)).
Knot transport_knot(const BranchFunction& f1, double y) {
  const double s = f1.inverse(y);
  return {f1.hi() + y - s, y, slope_from(f1.derivative(s))};
}

// Slope errors enter the balance identity as d(1/f2') = df2'/f2'^2, so the
// slope tolerance scales with f2'^2.
bool piece_matches(const Knot& k0, const Knot& k1, const Knot& probe, double vtol, double stol) {
  if (k1.x - k0.x <= kMinPieceWidth) return true;
  const Knot h = detail::hermite_at(k0, k1, probe.x);
  return std::abs(h.y - probe.y) <= vtol &&
         std::abs(h.dy - probe.dy) <= stol * std::max(1.0, probe.dy * probe.dy);
}

void refine_transport(const BranchFunction& f1, const Knot& k0, const Knot& k1, int depth,
                      std::vector<Knot>& out) {
  bool ok = depth >= kMaxRefineDepth;
  if (!ok) {
    ok = true;
    for (double q : {0.25, 0.5, 0.75}) {
      const Knot probe = transport_knot(f1, k0.y + q * (k1.y - k0.y));
      if (!piece_matches(k0, k1, probe, kTransportValueTol, kTransportSlopeTol)) {
        ok = false;
        break;
      }
    }
  }
  if (ok) {
    out.push_back(k1);
    return;
  }
  const Knot mid = transport_knot(f1, 0.5 * (k0.y + k1.y));
  refine_transport(f1, k0, mid, depth + 1, out);
  refine_transport(f1, mid, k1, depth + 1, out);
}

// Keep the fewest trajectory points (plus the forced ones) whose Hermite
// interpolant reproduces every dense point within tolerance.
void thin_segment(const std::vector<Knot>& dense, std::size_t i, std::size_t j, double vtol, double stol,
                  std::vector<Knot>& out) {
  if (j - i > 1) {
    bool ok = true;
    for (std::size_t k = i + 1; k < j && ok; ++k) ok = piece_matches(dense[i], dense[j], dense[k], vtol, stol);
    if (!ok) {
      const std::size_t mid = i + (j - i) / 2;
      thin_segment(dense, i, mid, vtol, stol, out);
      thin_segment(dense, mid, j, vtol, stol, out);
      return;
    }
  }
  out.push_back(dense[j]);
}

std::vector<Knot> thin(const std::vector<Knot>& dense, const std::vector<char>& forced, std::size_t cap) {
  const auto forced_count = static_cast<std::size_t>(std::count(forced.begin(), forced.end(), 1));
  double vtol = kResampleValueTol, stol = kResampleSlopeTol;
  for (;;) {
    std::vector<Knot> knots{dense.front()};
    std::size_t start = 0;
    for (std::size_t k = 1; k < dense.size(); ++k) {
      if (!forced[k]) continue;
      thin_segment(dense, start, k, vtol, stol, knots);
      start = k;
    }
    if (knots.size() <= std::max(cap, forced_count) || 2.0 * stol > kResampleSlopeCeiling) return knots;
    vtol *= 2.0;
    stol *= 2.0;
  }
}

double rk4_step(const BranchFunction& f1, double y, double h) {
  const double k1 = extension_slope(f1, y);
  const double k2 = extension_slope(f1, y + 0.5 * h * k1);
  const double k3 = extension_slope(f1, y + 0.5 * h * k2);
  const double k4 = extension_slope(f1, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::vector<double> rk4(const BranchFunction& f1, std::size_t n, double h) {
  std::vector<double> y(n + 1);
  y[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) y[k + 1] = rk4_step(f1, y[k], h);
  return y;
}

// Advance from k0 to x1 with one RK4 step, or with two halves (recursively)
// where the cubic through the step cannot follow the solution. Appends the
// accepted knots and returns the last one.
Knot advance(const BranchFunction& f1, const Knot& k0, double x1, int depth, std::vector<Knot>& out) {
  const double h = x1 - k0.x;
  const double y1 = std::clamp(rk4_step(f1, k0.y, h), 0.0, 1.0);
  const Knot k1{x1, y1, extension_slope(f1, y1)};
  if (depth < kMaxOdeRefineDepth) {
    // the slope error of a Hermite piece vanishes at its midpoint; probe a quarter in
    const double yq = std::clamp(rk4_step(f1, k0.y, 0.25 * h), 0.0, 1.0);
    const Knot probe{k0.x + 0.25 * h, yq, extension_slope(f1, yq)};
    if (!piece_matches(k0, k1, probe, kOdeRefineValueTol, kResampleSlopeTol)) {
      const Knot left = advance(f1, k0, k0.x + 0.5 * h, depth + 1, out);
      return advance(f1, left, x1, depth + 1, out);
    }
  }
  out.push_back(k1);
  return k1;
}

std::size_t step_count(double length, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::StepTooLarge, "step must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / step - 1e-9)));
}

}  // namespace

double extension_slope(const BranchFunction& f1, double y) {
  const double c = f1.derivative(f1.inverse(std::clamp(y, 0.0, 1.0)));
  return slope_from(c);
}

double transport_inverse(const BranchFunction& f1, double y) { return f1.hi() + y - f1.inverse(y); }

double transport_value(const BranchFunction& f1, double x) {
  const double a = f1.hi();
  if (x <= a) return 0.0;
  if (x >= 1.0) return 1.0;
  // G(y) = a + y - f1^-1(y) increases with slope 1 - 1/c in (0,1)
  double lo = 0.0, hi = 1.0;
  double y = (x - a) / (1.0 - a);
  for (int iter = 0; iter < kInversionMaxIter; ++iter) {
    const double s = f1.inverse(y);
    const double g = a + y - s - x;
    if (g == 0.0) return y;
    if (g < 0.0) lo = y; else hi = y;
    const double slope = 1.0 - 1.0 / f1.derivative(s);
    double next = y - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-16) return next;
    y = next;
  }
  return y;
}

OdeTrajectory integrate_extension_ode(const BranchFunction& f1, double step) {
  const double a = f1.hi();
  const std::size_t n = step_count(1.0 - a, step);
  const double h = (1.0 - a) / static_cast<double>(n);
  OdeTrajectory traj;
  traj.step = h;
  traj.y = rk4(f1, n, h);
  traj.x.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) traj.x[k] = a + static_cast<double>(k) * h;
  traj.x[n] = 1.0;
  return traj;
}

ExtensionResult extend_by_ode(const BranchFunction& f1, double step, double tol) {
  require_full_expanding(f1);
  const double a = f1.hi();
  OdeTrajectory traj = integrate_extension_ode(f1, step);
  const OdeTrajectory half = integrate_extension_ode(f1, 0.5 * traj.step);
  const std::size_t n = traj.y.size() - 1;

  double estimate = 0.0;
  for (std::size_t k = 0; k <= n; ++k) estimate = std::max(estimate, std::abs(traj.y[k] - half.y[2 * k]));
  if (estimate > tol) {
    std::ostringstream os;
    os.precision(12);
    os << "half-step error estimate " << estimate << " exceeds " << tol;
    throw Error(ErrorCode::StepTooLarge, os.str());
  }
  for (double& y : traj.y) {
    if (y < -kStateOvershootTol || y > 1.0 + kStateOvershootTol)
      throw Error(ErrorCode::StepTooLarge, "integrated state left [0,1]");
    y = std::clamp(y, 0.0, 1.0);
  }

  // Dense output: the fixed-step grid, with steps split where needed.
  std::vector<Knot> steps{{a, 0.0, extension_slope(f1, 0.0)}};
  for (std::size_t k = 1; k <= n; ++k) advance(f1, steps.back(), traj.x[k], 0, steps);
  const double closure = std::abs(steps.back().y - 1.0);
  if (closure <= kClosurePinTol) steps.back() = {1.0, 1.0, extension_slope(f1, 1.0)};

  // crossings of f1's knot values are forced knots: f2'' jumps exactly there
  const auto f1_values = f1.ys();
  const double gap = 1e-3 * traj.step;
  std::vector<Knot> dense{steps.front()};
  std::vector<char> forced{1};
  std::size_t v = 1;
  const std::size_t last = steps.size() - 1;
  for (std::size_t k = 1; k <= last; ++k) {
    const Knot prev = steps[k - 1];
    Knot here = steps[k];
    bool here_replaced = false;
    while (v + 1 < f1_values.size() && f1_values[v] <= prev.y) ++v;
    for (; v + 1 < f1_values.size() && f1_values[v] < here.y; ++v) {
      const double target = f1_values[v];
      double lo = prev.x, hi = here.x, x = 0.5 * (lo + hi);
      for (int iter = 0; iter < 60; ++iter) {
        const Knot p = detail::hermite_at(prev, here, x);
        if (p.y < target) lo = x; else hi = x;
        double nx = x - (p.y - target) / p.dy;
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) <= 1e-17) break;
        x = nx;
      }
      const Knot crossing{x, target, extension_slope(f1, target)};
      if (x - dense.back().x <= gap) {
        if (!forced.back()) {
          dense.back() = crossing;
          forced.back() = 1;
        }
      } else if (here.x - x <= gap) {
        if (k < last && !here_replaced) {
          here = crossing;
          here_replaced = true;
        }
      } else {
        dense.push_back(crossing);
        forced.push_back(1);
      }
    }
    if (here_replaced && here.x - dense.back().x <= gap) continue;
    dense.push_back(here);
    forced.push_back(k == last || here_replaced ? 1 : 0);
  }

  std::vector<Knot> knots = thin(dense, forced, kMaxResampledKnots);
  knots.front() = {a, 0.0, extension_slope(f1, 0.0)};
  knots.back().x = 1.0;

  return ExtensionResult{CircleMap(f1, build_branch(knots, f1.margin()), 0.0), closure, ExtensionMethod::Ode, n,
                         estimate};
}

ExtensionResult extend_by_transport(const BranchFunction& f1) {
  require_full_expanding(f1);
  const double a = f1.hi();
  const double closure = std::abs(transport_inverse(f1, 1.0) - 1.0);

  const auto values = f1.ys();
  std::vector<Knot> knots{transport_knot(f1, values[0])};
  for (std::size_t i = 1; i < values.size(); ++i) {
    const Knot next = transport_knot(f1, values[i]);
    refine_transport(f1, knots.back(), next, 0, knots);
  }
  knots.front() = {a, 0.0, knots.front().dy};
  knots.back() = {1.0, 1.0, knots.back().dy};
  const std::size_t count = knots.size();
  return ExtensionResult{CircleMap(f1, build_branch(knots, f1.margin()), 0.0), closure,
                         ExtensionMethod::Transport, count, 0.0};
}

GluingCheck check_gluing(const BranchFunction& f1, double tol) {
  const double end_slope = f1.derivative(f1.hi());
  const double residual = std::abs(f1.derivative(f1.lo()) - slope_from(end_slope));
  return {residual <= tol, residual};
}

double balance_defect(const CircleMap& m, std::size_t points) {
  const BranchFunction& b1 = m.branch1();
  const BranchFunction& b2 = m.branch2();
  double worst = 0.0;
  for (std::size_t i = 1; i <= points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(points + 1);
    const double s1 = b1.inverse(x);
    const double s2 = b2.inverse(x);
    worst = std::max(worst, std::abs(1.0 / b1.derivative(s1) + 1.0 / b2.derivative(s2) - 1.0));
  }
  return worst;
}

double branch_sup_difference(const BranchFunction& b1, const BranchFunction& b2, std::size_t grid) {
  const double lo = std::max(b1.lo(), b2.lo());
  const double hi = std::min(b1.hi(), b2.hi());
  double worst = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
    worst = std::max(worst, std::abs(b1.value(x) - b2.value(x)));
  }
  return worst;
}

}  // namespace lebmaps
