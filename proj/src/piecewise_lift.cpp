#include "piecewise_lift.hpp"

#include <algorithm>
#include <cmath>

#include "lebmaps/error.hpp"

namespace lebmaps::detail {

void PiecewiseLift::append(std::span<const Knot> knots, double dx, double dy) {
  if (knots.empty()) return;
  std::size_t start = 0;
  if (!knots_.empty()) {
    SideKnot& last = knots_.back();
    if (std::abs(knots[0].x + dx - last.x) > kSnap || std::abs(knots[0].y + dy - last.y) > kSnap)
      throw Error(ErrorCode::NonMonotoneInput, "appended knots do not continue the lift");
    last.right = knots[0].dy;
    start = 1;
  }
  for (std::size_t i = start; i < knots.size(); ++i)
    knots_.push_back({knots[i].x + dx, knots[i].y + dy, knots[i].dy, knots[i].dy});
}

std::size_t PiecewiseLift::piece_of(double x) const noexcept {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const SideKnot& k) { return v < k.x; });
  const auto idx = static_cast<std::ptrdiff_t>(it - knots_.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(knots_.size()) - 2));
}

Knot PiecewiseLift::piece_at(std::size_t i, double x) const noexcept {
  const SideKnot& a = knots_[i];
  const SideKnot& b = knots_[i + 1];
  return hermite_at({a.x, a.y, a.right}, {b.x, b.y, b.left}, x);
}

Knot PiecewiseLift::at(double x) const { return piece_at(piece_of(x), x); }

std::ptrdiff_t PiecewiseLift::knot_near(double x) const noexcept {
  const std::size_t i = piece_of(x);
  if (std::abs(knots_[i].x - x) <= kSnap) return static_cast<std::ptrdiff_t>(i);
  if (std::abs(knots_[i + 1].x - x) <= kSnap) return static_cast<std::ptrdiff_t>(i + 1);
  return -1;
}

double PiecewiseLift::solve(double target) const {
  if (target <= knots_.front().y) return knots_.front().x;
  if (target >= knots_.back().y) return knots_.back().x;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), target,
                                   [](double v, const SideKnot& k) { return v < k.y; });
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (knots_[i].y == target) return knots_[i].x;
  double lo = knots_[i].x, hi = knots_[i + 1].x;
  double x = lo + (target - knots_[i].y) / (knots_[i + 1].y - knots_[i].y) * (hi - lo);
  for (int iter = 0; iter < kInversionMaxIter; ++iter) {
    const Knot k = piece_at(i, x);
    const double f = k.y - target;
    if (f == 0.0) return x;
    if (f < 0.0) lo = x; else hi = x;
    double next = x - f / k.dy;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

std::vector<Knot> PiecewiseLift::slice(double from, double to) const {
  std::vector<Knot> out;
  const std::ptrdiff_t first = knot_near(from);
  if (first >= 0) {
    const SideKnot& k = knots_[static_cast<std::size_t>(first)];
    out.push_back({from, k.y + (from - k.x) * k.right, k.right});
  } else {
    out.push_back(at(from));
  }
  for (const SideKnot& k : knots_) {
    if (k.x > from + kSnap && k.x < to - kSnap) out.push_back({k.x, k.y, 0.5 * (k.left + k.right)});
  }
  const std::ptrdiff_t last = knot_near(to);
  if (last >= 0) {
    const SideKnot& k = knots_[static_cast<std::size_t>(last)];
    out.push_back({to, k.y + (to - k.x) * k.left, k.left});
  } else {
    out.push_back(at(to));
  }
  return out;
}

void shift_knots(std::vector<Knot>& knots, double dx, double dy) {
  for (Knot& k : knots) {
    k.x += dx;
    k.y += dy;
  }
}

}  // namespace lebmaps::detail
