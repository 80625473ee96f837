#pragma once

// The transfer operator Ph(x) = sum over f(y)=x of h(y)/f'(y), evaluated
// nodewise on a uniform grid by exact branch inversion.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lebmaps/circle_map.hpp"

namespace lebmaps {

inline constexpr std::size_t kDefaultDensityGrid = 4096;
inline constexpr std::size_t kMinDensityGrid = 16;
inline constexpr std::size_t kDefaultMaxIterations = 200;

/// Nonnegative density on nodes x_i = i/N, i = 0..N, linear between nodes.
class DensityGrid {
 public:
  explicit DensityGrid(std::vector<double> values);

  static DensityGrid constant(std::size_t cells, double level = 1.0);
  static DensityGrid from_function(std::size_t cells, const std::function<double(double)>& h);

  std::size_t cells() const noexcept { return values_.size() - 1; }
  std::span<const double> values() const noexcept { return values_; }
  double node(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(cells());
  }
  /// Trapezoidal integral over [0,1].
  double mass() const noexcept;
  double at(double x) const;
  /// Rescaled to unit mass (probability density).
  DensityGrid normalized() const;

 private:
  std::vector<double> values_;
};

double sup_distance(const DensityGrid& a, const DensityGrid& b);
double l1_distance(const DensityGrid& a, const DensityGrid& b);

/// Preimage positions and derivatives for every node of a grid; reused across
/// iterations since the map does not change.
struct TransferPlan {
  std::size_t cells = 0;
  std::vector<double> pos1, pos2;
  std::vector<double> slope1, slope2;
};

TransferPlan make_transfer_plan(const CircleMap& m, std::size_t cells);
DensityGrid apply_transfer(const TransferPlan& plan, const DensityGrid& h);
DensityGrid apply_transfer(const CircleMap& m, const DensityGrid& h);

/// sup_y |N1^-1(y) + (N2^-1(y) - a) - y| over y = i/N: the defect of
/// lambda(f^-1[0,y]) = y for the normalized map.
double preservation_residual(const CircleMap& m, std::size_t grid = kDefaultResidualGrid);

struct InvariantDensityResult {
  DensityGrid density;
  /// residual[k] = sup-norm of P h_k - h_k
  std::vector<double> residuals;
  std::size_t iterations = 0;
  bool converged = false;
};

InvariantDensityResult iterate_to_invariant(const CircleMap& m, const DensityGrid& h0,
                                            std::size_t max_iters = kDefaultMaxIterations,
                                            double tol = 1e-10);

}  // namespace lebmaps
