#include "lebmaps/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lebmaps/error.hpp"
#include "lebmaps/kernels.hpp"
#include "lebmaps/transfer.hpp"

namespace lebmaps {

double wrap01(double x) noexcept {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

double circle_distance(double a, double b) noexcept {
  const double d = wrap01(std::abs(a - b));
  return std::min(d, 1.0 - d);
}

CircleMap::CircleMap(BranchFunction branch1, BranchFunction branch2, double rotation_offset)
    : branch1_(std::move(branch1)), branch2_(std::move(branch2)), theta_(wrap01(rotation_offset)) {
  const double a = branch1_.hi();
  if (branch1_.lo() != 0.0 || branch2_.lo() != a || branch2_.hi() != 1.0 || !(a > 0.0 && a < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "branch domains [" << branch1_.lo() << ", " << a << "] and [" << branch2_.lo() << ", "
       << branch2_.hi() << "] do not tile [0,1]";
    throw Error(ErrorCode::NotFullBranch, os.str());
  }
}

double CircleMap::normalized_lift(double u) const {
  return u < branch_point() ? branch1_.value(u) : 1.0 + branch2_.value(u);
}

double CircleMap::normalized_derivative(double u) const {
  return u < branch_point() ? branch1_.derivative(u) : branch2_.derivative(u);
}

double CircleMap::value(double x) const { return wrap01(normalized_lift(wrap01(x - theta_)) + theta_); }

double CircleMap::derivative(double x) const { return normalized_derivative(wrap01(x - theta_)); }

std::pair<double, double> CircleMap::normalized_preimages(double w) const {
  return {branch1_.inverse(w), branch2_.inverse(w)};
}

void CircleMap::sample(std::span<const double> x, std::span<double> value, std::span<double> deriv) const {
  const double a = branch_point();
  std::vector<double> u1, u2;
  std::vector<std::size_t> i1, i2;
  u1.reserve(x.size());
  u2.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double u = wrap01(x[j] - theta_);
    if (u < a) {
      u1.push_back(u);
      i1.push_back(j);
    } else {
      u2.push_back(u);
      i2.push_back(j);
    }
  }
  std::vector<double> v(std::max(u1.size(), u2.size())), d(v.size());
  branch1_.sample(u1, std::span(v).first(u1.size()), std::span(d).first(u1.size()));
  for (std::size_t k = 0; k < u1.size(); ++k) {
    value[i1[k]] = wrap01(v[k] + theta_);
    deriv[i1[k]] = d[k];
  }
  branch2_.sample(u2, std::span(v).first(u2.size()), std::span(d).first(u2.size()));
  for (std::size_t k = 0; k < u2.size(); ++k) {
    value[i2[k]] = wrap01(v[k] + theta_);
    deriv[i2[k]] = d[k];
  }
}

namespace {

BranchFunction linear_branch(double x0, double x1, double margin) {
  const double slope = 1.0 / (x1 - x0);
  const Knot knots[] = {{x0, 0.0, slope}, {x1, 1.0, slope}};
  return build_branch(knots, margin);
}

}  // namespace

CircleMap piecewise_linear_map(double branch_point, double rotation_offset, double margin) {
  return CircleMap(linear_branch(0.0, branch_point, margin), linear_branch(branch_point, 1.0, margin),
                   rotation_offset);
}

CircleMap doubling_map(double rotation_offset) { return piecewise_linear_map(0.5, rotation_offset); }

double find_fixed_point(const CircleMap& m) {
  // G(u) = lift(u) - u is strictly increasing; find u with G(u) an integer.
  auto g = [&](double u) { return m.normalized_lift(u) - u; };
  const double g0 = g(0.0);
  const double target = std::ceil(g0);
  if (g0 == target) return wrap01(m.rotation_offset());
  double lo = 0.0, hi = 1.0;
  if (!(g(hi) >= target)) throw Error(ErrorCode::NoConvergence, "lift does not cross an integer on [0,1]");
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target) lo = mid; else hi = mid;
  }
  const double u = 0.5 * (lo + hi);
  if (std::abs(g(u) - target) > 1e-12) throw Error(ErrorCode::NoConvergence, "fixed point residual too large");
  return wrap01(u + m.rotation_offset());
}

double c1_distance(const CircleMap& m1, const CircleMap& m2, std::size_t grid) {
  std::vector<double> x(grid);
  for (std::size_t i = 0; i < grid; ++i) x[i] = static_cast<double>(i) / static_cast<double>(grid);
  std::vector<double> v1(grid), d1(grid), v2(grid), d2(grid);
  m1.sample(x, v1, d1);
  m2.sample(x, v2, d2);
  return kernels::max_circle_diff(v1, v2) + kernels::max_abs_diff(d1, d2);
}

double circle_derivative_mismatch(const CircleMap& m) {
  const double a = m.branch_point();
  const double at_zero = std::abs(m.branch1().derivative(0.0) - m.branch2().derivative(1.0));
  const double at_a = std::abs(m.branch1().derivative(a) - m.branch2().derivative(a));
  return std::max(at_zero, at_a);
}

ValidationReport validate_map(const CircleMap& m, std::size_t grid) {
  ValidationReport r;
  const BranchFunction& b1 = m.branch1();
  const BranchFunction& b2 = m.branch2();
  r.closure_residual = std::max({std::abs(b1.value_lo()), std::abs(b1.value_hi() - 1.0),
                                 std::abs(b2.value_lo()), std::abs(b2.value_hi() - 1.0)});
  r.is_full_branch = r.closure_residual <= kFullBranchTol;
  r.min_derivative = std::min(b1.min_derivative(), b2.min_derivative());
  r.is_expanding = r.min_derivative > 1.0;
  r.gluing_residual = circle_derivative_mismatch(m);
  try {
    r.preservation_residual = preservation_residual(m, std::max<std::size_t>(grid, 1));
  } catch (const Error&) {
    r.preservation_residual = std::numeric_limits<double>::infinity();
  }
  return r;
}

std::pair<double, double> branch_points(const CircleMap& m) {
  const double theta = m.rotation_offset();
  const double target = 1.0 - theta;
  const double u1 = m.branch1().inverse(std::clamp(target, m.branch1().value_lo(), m.branch1().value_hi()));
  const double u2 = m.branch2().inverse(std::clamp(target, m.branch2().value_lo(), m.branch2().value_hi()));
  return {wrap01(theta + u2 - 1.0), wrap01(theta + u1)};
}

}  // namespace lebmaps
