#pragma once

// Internal: a piecewise cubic Hermite curve over an arbitrary interval with
// one-sided slopes at each knot, used to cut, shift and re-glue circle-map
// lifts when moving the base point of a map.

#include <span>
#include <vector>

#include "lebmaps/branch.hpp"

namespace lebmaps::detail {

/// Value and slope at x of the cubic Hermite piece between k0 and k1.
inline Knot hermite_at(const Knot& k0, const Knot& k1, double x) noexcept {
  const double h = k1.x - k0.x;
  const double t = (x - k0.x) / h;
  const double s = 1.0 - t;
  const double y = (1.0 + 2.0 * t) * s * s * k0.y + t * s * s * h * k0.dy + t * t * (3.0 - 2.0 * t) * k1.y +
                   t * t * (t - 1.0) * h * k1.dy;
  const double d = 6.0 * t * s * (k1.y - k0.y) / h + s * (1.0 - 3.0 * t) * k0.dy + t * (3.0 * t - 2.0) * k1.dy;
  return {x, y, d};
}

class PiecewiseLift {
 public:
  /// Append knots shifted by (dx, dy). The first appended knot must coincide
  /// with the current last knot; it only contributes the right-hand slope.
  void append(std::span<const Knot> knots, double dx = 0.0, double dy = 0.0);

  bool empty() const noexcept { return knots_.empty(); }
  double lo() const noexcept { return knots_.front().x; }
  double hi() const noexcept { return knots_.back().x; }

  Knot at(double x) const;
  /// x with value(x) = target; the lift must be increasing.
  double solve(double target) const;

  /// Restriction to [from, to] as a knot list. Cutting a cubic piece is
  /// exact; endpoints landing on a knot take that side's slope, interior
  /// seams take the mean of both. Knots within kSnap of a cut are absorbed.
  std::vector<Knot> slice(double from, double to) const;

  static constexpr double kSnap = 1e-10;

 private:
  struct SideKnot {
    double x, y, left, right;
  };
  std::size_t piece_of(double x) const noexcept;
  Knot piece_at(std::size_t i, double x) const noexcept;
  std::ptrdiff_t knot_near(double x) const noexcept;

  std::vector<SideKnot> knots_;
};

void shift_knots(std::vector<Knot>& knots, double dx, double dy);

}  // namespace lebmaps::detail
