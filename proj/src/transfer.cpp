#include "lebmaps/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "lebmaps/error.hpp"
#include "lebmaps/kernels.hpp"

namespace lebmaps {

DensityGrid::DensityGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw Error(ErrorCode::GridTooCoarse, "density grid needs at least one cell");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::OutOfRange, "density values must be finite and nonnegative");
  }
}

DensityGrid DensityGrid::constant(std::size_t cells, double level) {
  return DensityGrid(std::vector<double>(cells + 1, level));
}

DensityGrid DensityGrid::from_function(std::size_t cells, const std::function<double(double)>& h) {
  std::vector<double> v(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) v[i] = h(static_cast<double>(i) / static_cast<double>(cells));
  return DensityGrid(std::move(v));
}

double DensityGrid::mass() const noexcept {
  return kernels::trapezoid(values_, 1.0 / static_cast<double>(cells()));
}

double DensityGrid::at(double x) const {
  const double pos = std::clamp(x, 0.0, 1.0);
  double out = 0.0;
  kernels::lerp_uniform(values_, std::span(&pos, 1), std::span(&out, 1));
  return out;
}

DensityGrid DensityGrid::normalized() const {
  const double m = mass();
  if (!(m > 0.0)) throw Error(ErrorCode::OutOfRange, "cannot normalize a density of zero mass");
  std::vector<double> v(values_);
  for (double& x : v) x /= m;
  return DensityGrid(std::move(v));
}

double sup_distance(const DensityGrid& a, const DensityGrid& b) {
  if (a.cells() != b.cells()) throw Error(ErrorCode::GridTooCoarse, "density grids differ in size");
  return kernels::max_abs_diff(a.values(), b.values());
}

double l1_distance(const DensityGrid& a, const DensityGrid& b) {
  if (a.cells() != b.cells()) throw Error(ErrorCode::GridTooCoarse, "density grids differ in size");
  return kernels::l1_trapezoid_diff(a.values(), b.values(), 1.0 / static_cast<double>(a.cells()));
}

TransferPlan make_transfer_plan(const CircleMap& m, std::size_t cells) {
  if (cells < kMinDensityGrid) throw Error(ErrorCode::GridTooCoarse, "transfer operator needs N >= 16");
  TransferPlan plan;
  plan.cells = cells;
  const std::size_t n = cells + 1;
  plan.pos1.resize(n);
  plan.pos2.resize(n);
  plan.slope1.resize(n);
  plan.slope2.resize(n);
  const double theta = m.rotation_offset();
  const BranchFunction& b1 = m.branch1();
  const BranchFunction& b2 = m.branch2();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(cells);
    const double w = wrap01(x - theta);
    const double u1 = b1.inverse(w);
    const double u2 = b2.inverse(w);
    // circle positions; 1.0 and 0.0 name the same node, keep it in [0,1)
    plan.pos1[i] = wrap01(u1 + theta);
    plan.pos2[i] = wrap01(u2 + theta);
    plan.slope1[i] = b1.derivative(u1);
    plan.slope2[i] = b2.derivative(u2);
  }
  return plan;
}

DensityGrid apply_transfer(const TransferPlan& plan, const DensityGrid& h) {
  const std::size_t n = plan.cells + 1;
  std::vector<double> h1(n), h2(n), out(n);
  kernels::lerp_uniform(h.values(), plan.pos1, h1);
  kernels::lerp_uniform(h.values(), plan.pos2, h2);
  kernels::transfer_combine(h1, plan.slope1, h2, plan.slope2, out);
  return DensityGrid(std::move(out));
}

DensityGrid apply_transfer(const CircleMap& m, const DensityGrid& h) {
  // Ph is produced on the grid of h; h is sampled at preimages by interpolation.
  return apply_transfer(make_transfer_plan(m, h.cells()), h);
}

double preservation_residual(const CircleMap& m, std::size_t grid) {
  if (grid < 1) throw Error(ErrorCode::GridTooCoarse, "residual grid must have at least one cell");
  const BranchFunction& b1 = m.branch1();
  const BranchFunction& b2 = m.branch2();
  const std::size_t n = grid + 1;
  std::vector<double> y(n), pre1(n), pre2(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<double>(i) / static_cast<double>(grid);
    pre1[i] = b1.inverse(std::clamp(y[i], b1.value_lo(), b1.value_hi()));
    pre2[i] = b2.inverse(std::clamp(y[i], b2.value_lo(), b2.value_hi()));
  }
  return kernels::lebesgue_defect(pre1, pre2, y, m.branch_point());
}

InvariantDensityResult iterate_to_invariant(const CircleMap& m, const DensityGrid& h0,
                                            std::size_t max_iters, double tol) {
  const TransferPlan plan = make_transfer_plan(m, h0.cells());
  InvariantDensityResult result{h0, {}, 0, false};
  for (std::size_t k = 0;; ++k) {
    DensityGrid next = apply_transfer(plan, result.density);
    const double r = sup_distance(next, result.density);
    result.residuals.push_back(r);
    if (r <= tol) {
      result.converged = true;
      return result;
    }
    if (k == max_iters) return result;
    result.density = std::move(next);
    result.iterations = k + 1;
  }
}

}  // namespace lebmaps
