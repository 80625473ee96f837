#include "lebmaps/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lebmaps/error.hpp"
#include "lebmaps/kernels.hpp"

namespace lebmaps {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string describe(const char* what, std::size_t i, double v) {
  std::ostringstream os;
  os.precision(12);
  os << what << " at knot " << i << " (" << v << ")";
  return os.str();
}

void check_ordering(std::span<const Knot> knots) {
  if (knots.size() < 2) throw Error(ErrorCode::NonMonotoneInput, "need at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const Knot& k = knots[i];
    if (!std::isfinite(k.x) || !std::isfinite(k.y) || !std::isfinite(k.dy))
      throw Error(ErrorCode::NonMonotoneInput, describe("non-finite knot data", i, k.x));
    if (i == 0) continue;
    if (!(k.x > knots[i - 1].x)) throw Error(ErrorCode::NonMonotoneInput, describe("x not increasing", i, k.x));
    if (!(k.y > knots[i - 1].y)) throw Error(ErrorCode::NonMonotoneInput, describe("y not increasing", i, k.y));
  }
}

}  // namespace

double hermite_min_slope(double secant, double d0, double d1) noexcept {
  // D(t) = d0 + B t + A t^2
  const double a = 3.0 * (d0 + d1 - 2.0 * secant);
  const double b = 6.0 * secant - 4.0 * d0 - 2.0 * d1;
  double m = std::min(d0, d1);
  if (a > 0.0) {
    const double t = -b / (2.0 * a);
    if (t > 0.0 && t < 1.0) m = std::min(m, d0 + t * (b + a * t));
  }
  return m;
}

BranchFunction build_branch(std::span<const Knot> knots, double margin) {
  if (!(margin >= 0.0)) throw Error(ErrorCode::NotExpanding, "expansion margin must be nonnegative");
  check_ordering(knots);
  const double floor_slope = 1.0 + margin;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i].dy > floor_slope))
      throw Error(ErrorCode::NotExpanding, describe("slope <= 1 + margin", i, knots[i].dy));
  }
  BranchFunction b;
  b.margin_ = margin;
  b.expanding_ = true;
  b.xs_.reserve(knots.size());
  b.ys_.reserve(knots.size());
  b.ds_.reserve(knots.size());
  for (const Knot& k : knots) {
    b.xs_.push_back(k.x);
    b.ys_.push_back(k.y);
    b.ds_.push_back(k.dy);
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double secant = (b.ys_[i + 1] - b.ys_[i]) / (b.xs_[i + 1] - b.xs_[i]);
    const double m = hermite_min_slope(secant, b.ds_[i], b.ds_[i + 1]);
    if (!(m > floor_slope))
      throw Error(ErrorCode::InterpolantViolation, describe("interpolant slope dips to", i, m));
  }
  return b;
}

BranchFunction build_monotone_branch(std::span<const Knot> knots) {
  check_ordering(knots);
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i].dy > 0.0)) throw Error(ErrorCode::NonMonotoneInput, describe("nonpositive slope", i, knots[i].dy));
  }
  BranchFunction b;
  b.margin_ = 0.0;
  b.expanding_ = false;
  for (const Knot& k : knots) {
    b.xs_.push_back(k.x);
    b.ys_.push_back(k.y);
    b.ds_.push_back(k.dy);
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double secant = (b.ys_[i + 1] - b.ys_[i]) / (b.xs_[i + 1] - b.xs_[i]);
    if (!(hermite_min_slope(secant, b.ds_[i], b.ds_[i + 1]) > 0.0))
      throw Error(ErrorCode::InterpolantViolation, describe("interpolant not increasing on piece", i, secant));
  }
  return b;
}

std::vector<Knot> BranchFunction::knots() const {
  std::vector<Knot> out(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) out[i] = {xs_[i], ys_[i], ds_[i]};
  return out;
}

std::size_t BranchFunction::piece_of(double x) const noexcept {
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto idx = static_cast<std::ptrdiff_t>(it - xs_.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(xs_.size()) - 2));
}

double BranchFunction::clamp_domain(double x) const {
  const double slack = 4.0 * kEps * std::max(1.0, std::abs(hi()));
  if (!(x >= lo() - slack && x <= hi() + slack)) {
    std::ostringstream os;
    os.precision(17);
    os << x << " outside [" << lo() << ", " << hi() << "]";
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
  return std::clamp(x, lo(), hi());
}

double BranchFunction::piece_value(std::size_t i, double x) const noexcept {
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double s = 1.0 - t;
  return (1.0 + 2.0 * t) * s * s * ys_[i] + t * s * s * h * ds_[i] + t * t * (3.0 - 2.0 * t) * ys_[i + 1] +
         t * t * (t - 1.0) * h * ds_[i + 1];
}

double BranchFunction::piece_derivative(std::size_t i, double x) const noexcept {
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double s = 1.0 - t;
  return 6.0 * t * s * (ys_[i + 1] - ys_[i]) / h + s * (1.0 - 3.0 * t) * ds_[i] + t * (3.0 * t - 2.0) * ds_[i + 1];
}

double BranchFunction::value(double x) const {
  x = clamp_domain(x);
  return piece_value(piece_of(x), x);
}

double BranchFunction::derivative(double x) const {
  x = clamp_domain(x);
  return piece_derivative(piece_of(x), x);
}

double BranchFunction::inverse(double y) const {
  const double slack = 4.0 * kEps * std::max(1.0, std::abs(value_hi()));
  if (!(y >= value_lo() - slack && y <= value_hi() + slack)) {
    std::ostringstream os;
    os.precision(17);
    os << y << " outside [" << value_lo() << ", " << value_hi() << "]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  y = std::clamp(y, value_lo(), value_hi());
  const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
  auto idx = static_cast<std::ptrdiff_t>(it - ys_.begin()) - 1;
  idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(ys_.size()) - 2);
  const auto i = static_cast<std::size_t>(idx);
  if (y == ys_[i]) return xs_[i];
  if (y == ys_[i + 1]) return xs_[i + 1];

  // safeguarded Newton on the bracket [xs_[i], xs_[i+1]]
  double lo_x = xs_[i], hi_x = xs_[i + 1];
  double x = lo_x + (y - ys_[i]) / (ys_[i + 1] - ys_[i]) * (hi_x - lo_x);
  for (int iter = 0; iter < kInversionMaxIter; ++iter) {
    const double f = piece_value(i, x) - y;
    if (f == 0.0) return x;
    if (f < 0.0) lo_x = x; else hi_x = x;
    const double d = piece_derivative(i, x);
    double next = x - f / d;
    if (!(next > lo_x && next < hi_x)) next = 0.5 * (lo_x + hi_x);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 2.0 * kEps * std::max(1.0, std::abs(x)) || hi_x - lo_x <= 2.0 * kEps * std::max(1.0, std::abs(x))) {
      if (std::abs(piece_value(i, x) - y) <= kInversionTol) return x;
    }
  }
  if (std::abs(piece_value(i, x) - y) <= kInversionTol) return x;
  throw Error(ErrorCode::NoConvergence, "branch inversion did not converge");
}

double BranchFunction::min_derivative() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const double secant = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    m = std::min(m, hermite_min_slope(secant, ds_[i], ds_[i + 1]));
  }
  return m;
}

void BranchFunction::sample(std::span<const double> x, std::span<double> value,
                            std::span<double> deriv) const {
  std::vector<std::int32_t> seg(x.size());
  std::vector<double> clamped(x.begin(), x.end());
  for (std::size_t j = 0; j < x.size(); ++j) {
    clamped[j] = clamp_domain(x[j]);
    seg[j] = static_cast<std::int32_t>(piece_of(clamped[j]));
  }
  kernels::hermite_eval(xs_, ys_, ds_, seg, clamped, value, deriv);
}

double eval_branch(const BranchFunction& b, double x) { return b.value(x); }
double eval_derivative(const BranchFunction& b, double x) { return b.derivative(x); }
double invert_branch(const BranchFunction& b, double y) { return b.inverse(y); }

}  // namespace lebmaps
