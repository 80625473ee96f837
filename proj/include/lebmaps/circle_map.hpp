#pragma once

// Degree-2 expanding circle maps on [0,1)/(0~1).
//
// A map is stored normalized: two full branches N1 on [0,a] and N2 on [a,1]
// with N1(0)=0, N1(a)=1, N2(a)=0, N2(1)=1, so the normalized map fixes 0.
// The represented map is the rotation conjugate
//     f(x) = N(x - theta) + theta  (mod 1),
// whose fixed point is theta.

#include <span>
#include <utility>

#include "lebmaps/branch.hpp"

namespace lebmaps {

inline constexpr double kFullBranchTol = 1e-12;
inline constexpr std::size_t kDefaultResidualGrid = 4096;
inline constexpr std::size_t kDefaultDistanceGrid = 16384;

/// Reduce to [0,1).
double wrap01(double x) noexcept;

/// Distance on the circle R/Z.
double circle_distance(double a, double b) noexcept;

class CircleMap {
 public:
  /// Throws NotFullBranch if the branch domains are not [0,a] and [a,1].
  CircleMap(BranchFunction branch1, BranchFunction branch2, double rotation_offset = 0.0);

  const BranchFunction& branch1() const noexcept { return branch1_; }
  const BranchFunction& branch2() const noexcept { return branch2_; }
  double branch_point() const noexcept { return branch1_.hi(); }
  double rotation_offset() const noexcept { return theta_; }
  /// Expansion margin of the first branch (both branches share it by construction).
  double margin() const noexcept { return branch1_.margin(); }

  /// Lift of the normalized map on [0,1]: N1(u) on [0,a), 1 + N2(u) on [a,1].
  double normalized_lift(double u) const;
  double normalized_derivative(double u) const;

  /// The represented circle map, value reduced to [0,1).
  double value(double x) const;
  double derivative(double x) const;

  /// Preimages of w in [0,1] under the two normalized branches.
  std::pair<double, double> normalized_preimages(double w) const;

  /// Batch evaluation of the represented map.
  void sample(std::span<const double> x, std::span<double> value, std::span<double> deriv) const;

  friend bool operator==(const CircleMap&, const CircleMap&) = default;

 private:
  BranchFunction branch1_;
  BranchFunction branch2_;
  double theta_ = 0.0;
};

/// Linear branches u/a and (u-a)/(1-a); a = 1/2 is the doubling map.
CircleMap piecewise_linear_map(double branch_point, double rotation_offset = 0.0,
                               double margin = kDefaultMargin);
CircleMap doubling_map(double rotation_offset = 0.0);

struct Tolerances {
  double preservation = 1e-6;
  double gluing = 1e-6;
};

struct ValidationReport {
  bool is_full_branch = false;
  bool is_expanding = false;
  double min_derivative = 0.0;
  double preservation_residual = 0.0;
  double gluing_residual = 0.0;
  double closure_residual = 0.0;

  bool preserves_lebesgue(const Tolerances& tol = {}) const noexcept {
    return preservation_residual <= tol.preservation;
  }
  bool is_c1(const Tolerances& tol = {}) const noexcept { return gluing_residual <= tol.gluing; }
  /// Numerical membership in the space of C1 Lebesgue-preserving expanding maps.
  bool in_space(const Tolerances& tol = {}) const noexcept {
    return is_full_branch && is_expanding && preserves_lebesgue(tol) && is_c1(tol);
  }
};

/// Fixed point of the represented map; NoConvergence signals a corrupted map.
double find_fixed_point(const CircleMap& m);

/// sup over a uniform grid of the circle distance between values plus the
/// sup of the derivative difference.
double c1_distance(const CircleMap& m1, const CircleMap& m2, std::size_t grid = kDefaultDistanceGrid);

/// Never throws; residuals are reported, membership is decided by the caller.
ValidationReport validate_map(const CircleMap& m, std::size_t grid = kDefaultResidualGrid);

/// Circle-level derivative mismatch at the two branch points
/// max(|N1'(0) - N2'(1)|, |N1'(a) - N2'(a)|).
double circle_derivative_mismatch(const CircleMap& m);

/// Circle points mapped to 0, ordered as the arc [x, y] that contains the
/// fixed point (the first-branch arc of the parametrization).
std::pair<double, double> branch_points(const CircleMap& m);

}  // namespace lebmaps
