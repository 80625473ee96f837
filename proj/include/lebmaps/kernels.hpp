#pragma once

// Data-parallel inner loops used by the sampling, transfer-operator and
// comparison code. Each kernel has a scalar reference implementation and,
// on x86-64 hosts with AVX2+FMA, a vectorized one. The active backend is
// chosen once at startup from the CPU feature flags and can be overridden
// (tests pin it to compare the two).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lebmaps::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend) noexcept;

struct KernelTable {
  // Cubic Hermite value and derivative at x[j] on piece seg[j] of the knot
  // arrays (piece i spans kx[i]..kx[i+1]).
  void (*hermite_eval)(const double* kx, const double* ky, const double* kd,
                       const std::int32_t* seg, const double* x, double* value,
                       double* deriv, std::size_t n);
  // Linear interpolation of grid[0..cells] (uniform nodes i/cells) at pos[j] in [0,1].
  void (*lerp_uniform)(const double* grid, std::size_t cells, const double* pos,
                       double* out, std::size_t n);
  // out = h1/d1 + h2/d2, the two-preimage sum of the transfer operator.
  void (*transfer_combine)(const double* h1, const double* d1, const double* h2,
                           const double* d2, double* out, std::size_t n);
  double (*trapezoid)(const double* v, std::size_t n, double dx);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  // max over j of min(|a-b| mod 1, 1 - |a-b| mod 1)
  double (*max_circle_diff)(const double* a, const double* b, std::size_t n);
  double (*l1_trapezoid_diff)(const double* a, const double* b, std::size_t n, double dx);
  // max over j of |pre1 + pre2 - offset - y|
  double (*lebesgue_defect)(const double* pre1, const double* pre2, const double* y,
                            double offset, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool backend_available(Backend backend) noexcept;
Backend active_backend() noexcept;
// Returns false (and leaves the backend unchanged) if unavailable.
bool set_backend(Backend backend) noexcept;
const KernelTable& active() noexcept;

// span front ends over the active backend

void hermite_eval(std::span<const double> kx, std::span<const double> ky,
                  std::span<const double> kd, std::span<const std::int32_t> seg,
                  std::span<const double> x, std::span<double> value, std::span<double> deriv);
void lerp_uniform(std::span<const double> grid, std::span<const double> pos, std::span<double> out);
void transfer_combine(std::span<const double> h1, std::span<const double> d1,
                      std::span<const double> h2, std::span<const double> d2,
                      std::span<double> out);
double trapezoid(std::span<const double> v, double dx);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_circle_diff(std::span<const double> a, std::span<const double> b);
double l1_trapezoid_diff(std::span<const double> a, std::span<const double> b, double dx);
double lebesgue_defect(std::span<const double> pre1, std::span<const double> pre2,
                       std::span<const double> y, double offset);

}  // namespace lebmaps::kernels
