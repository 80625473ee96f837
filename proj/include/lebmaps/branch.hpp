#pragma once

// Strictly increasing C1 functions on an interval, stored as cubic Hermite
// data (x, y, dy) at knots. These are the building blocks of every map.

#include <cstddef>
#include <span>
#include <vector>

namespace lebmaps {

struct Knot {
  double x = 0.0;
  double y = 0.0;
  double dy = 0.0;

  friend bool operator==(const Knot&, const Knot&) = default;
};

inline constexpr double kDefaultMargin = 1e-3;
inline constexpr double kInversionTol = 1e-12;
inline constexpr int kInversionMaxIter = 200;

class BranchFunction {
 public:
  double lo() const noexcept { return xs_.front(); }
  double hi() const noexcept { return xs_.back(); }
  double value_lo() const noexcept { return ys_.front(); }
  double value_hi() const noexcept { return ys_.back(); }
  double margin() const noexcept { return margin_; }
  /// false for profiles built with build_monotone_branch
  bool expanding() const noexcept { return expanding_; }
  std::size_t size() const noexcept { return xs_.size(); }

  std::span<const double> xs() const noexcept { return xs_; }
  std::span<const double> ys() const noexcept { return ys_; }
  std::span<const double> dys() const noexcept { return ds_; }
  std::vector<Knot> knots() const;

  double value(double x) const;
  double derivative(double x) const;
  double inverse(double y) const;

  /// Exact minimum of the derivative (per piece the derivative is a quadratic).
  double min_derivative() const noexcept;

  /// Batch evaluation through the SIMD kernels. Points must lie in [lo, hi].
  void sample(std::span<const double> x, std::span<double> value, std::span<double> deriv) const;

  friend bool operator==(const BranchFunction&, const BranchFunction&) = default;

 private:
  friend BranchFunction build_branch(std::span<const Knot> knots, double margin);
  friend BranchFunction build_monotone_branch(std::span<const Knot> knots);

  BranchFunction() = default;
  std::size_t piece_of(double x) const noexcept;
  double clamp_domain(double x) const;
  double piece_value(std::size_t i, double x) const noexcept;
  double piece_derivative(std::size_t i, double x) const noexcept;

  std::vector<double> xs_, ys_, ds_;
  double margin_ = kDefaultMargin;
  bool expanding_ = true;
};

/// Expanding branch: knot slopes and the interpolant's derivative must exceed
/// 1 + margin everywhere.
BranchFunction build_branch(std::span<const Knot> knots, double margin = kDefaultMargin);

/// Strictly increasing C1 branch with no expansion requirement (normalized
/// profiles).
BranchFunction build_monotone_branch(std::span<const Knot> knots);

double eval_branch(const BranchFunction& b, double x);
double eval_derivative(const BranchFunction& b, double x);
double invert_branch(const BranchFunction& b, double y);

/// Minimum over t in [0,1] of the derivative of the Hermite cubic with unit
/// width, secant slope `secant` and end slopes d0, d1.
double hermite_min_slope(double secant, double d0, double d1) noexcept;

}  // namespace lebmaps
