#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace lebmaps::kernels::detail {
namespace {

void hermite_eval_scalar(const double* kx, const double* ky, const double* kd,
                         const std::int32_t* seg, const double* x, double* value,
                         double* deriv, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const std::int32_t i = seg[j];
    const double x0 = kx[i];
    const double h = kx[i + 1] - x0;
    const double y0 = ky[i], y1 = ky[i + 1];
    const double d0 = kd[i], d1 = kd[i + 1];
    const double t = (x[j] - x0) / h;
    const double s = 1.0 - t;
    const double h00 = (1.0 + 2.0 * t) * s * s;
    const double h10 = t * s * s;
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    value[j] = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    deriv[j] = 6.0 * t * s * (y1 - y0) / h + s * (1.0 - 3.0 * t) * d0 + t * (3.0 * t - 2.0) * d1;
  }
}

void lerp_uniform_scalar(const double* grid, std::size_t cells, const double* pos,
                         double* out, std::size_t n) {
  const double scale = static_cast<double>(cells);
  const auto last = static_cast<std::int64_t>(cells) - 1;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = pos[j] * scale;
    const auto c = std::clamp(static_cast<std::int64_t>(std::floor(s)), std::int64_t{0}, last);
    const double w = s - static_cast<double>(c);
    out[j] = grid[c] + w * (grid[c + 1] - grid[c]);
  }
}

void transfer_combine_scalar(const double* h1, const double* d1, const double* h2,
                             const double* d2, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = h1[j] / d1[j] + h2[j] / d2[j];
}

double trapezoid_scalar(const double* v, std::size_t n, double dx) {
  if (n < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) interior += v[j];
  return dx * (interior + 0.5 * (v[0] + v[n - 1]));
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double max_circle_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = std::abs(a[j] - b[j]);
    d -= std::floor(d);
    m = std::max(m, std::min(d, 1.0 - d));
  }
  return m;
}

double l1_trapezoid_diff_scalar(const double* a, const double* b, std::size_t n, double dx) {
  if (n < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) interior += std::abs(a[j] - b[j]);
  return dx * (interior + 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[n - 1] - b[n - 1])));
}

double lebesgue_defect_scalar(const double* pre1, const double* pre2, const double* y,
                              double offset, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(pre1[j] + (pre2[j] - offset) - y[j]));
  return m;
}

}  // namespace

const KernelTable kScalarTable{
    hermite_eval_scalar,   lerp_uniform_scalar,      transfer_combine_scalar,
    trapezoid_scalar,      max_abs_diff_scalar,      max_circle_diff_scalar,
    l1_trapezoid_diff_scalar, lebesgue_defect_scalar,
};

}  // namespace lebmaps::kernels::detail
