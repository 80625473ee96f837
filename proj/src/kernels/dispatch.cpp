#include <atomic>
#include <cassert>

#include "kernels_impl.hpp"

namespace lebmaps::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(LEBMAPS_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() noexcept { return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

const KernelTable& scalar_table() noexcept { return detail::kScalarTable; }

const KernelTable* avx2_table() noexcept {
#if defined(LEBMAPS_WITH_AVX2)
  return &detail::kAvx2Table;
#else
  return nullptr;
#endif
}

bool backend_available(Backend backend) noexcept {
  return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool set_backend(Backend backend) noexcept {
  if (!backend_available(backend)) return false;
  current().store(backend, std::memory_order_relaxed);
  return true;
}

const KernelTable& active() noexcept {
  if (active_backend() == Backend::Avx2) {
    if (const KernelTable* t = avx2_table()) return *t;
  }
  return detail::kScalarTable;
}

void hermite_eval(std::span<const double> kx, std::span<const double> ky,
                  std::span<const double> kd, std::span<const std::int32_t> seg,
                  std::span<const double> x, std::span<double> value, std::span<double> deriv) {
  assert(ky.size() == kx.size() && kd.size() == kx.size());
  assert(seg.size() == x.size() && value.size() == x.size() && deriv.size() == x.size());
  active().hermite_eval(kx.data(), ky.data(), kd.data(), seg.data(), x.data(), value.data(),
                        deriv.data(), x.size());
}

void lerp_uniform(std::span<const double> grid, std::span<const double> pos, std::span<double> out) {
  assert(grid.size() >= 2 && out.size() == pos.size());
  active().lerp_uniform(grid.data(), grid.size() - 1, pos.data(), out.data(), pos.size());
}

void transfer_combine(std::span<const double> h1, std::span<const double> d1,
                      std::span<const double> h2, std::span<const double> d2,
                      std::span<double> out) {
  assert(d1.size() == h1.size() && h2.size() == h1.size() && d2.size() == h1.size());
  assert(out.size() == h1.size());
  active().transfer_combine(h1.data(), d1.data(), h2.data(), d2.data(), out.data(), out.size());
}

double trapezoid(std::span<const double> v, double dx) {
  return active().trapezoid(v.data(), v.size(), dx);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

double max_circle_diff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().max_circle_diff(a.data(), b.data(), a.size());
}

double l1_trapezoid_diff(std::span<const double> a, std::span<const double> b, double dx) {
  assert(a.size() == b.size());
  return active().l1_trapezoid_diff(a.data(), b.data(), a.size(), dx);
}

double lebesgue_defect(std::span<const double> pre1, std::span<const double> pre2,
                       std::span<const double> y, double offset) {
  assert(pre2.size() == pre1.size() && y.size() == pre1.size());
  return active().lebesgue_defect(pre1.data(), pre2.data(), y.data(), offset, y.size());
}

}  // namespace lebmaps::kernels
