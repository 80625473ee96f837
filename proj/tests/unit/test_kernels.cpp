#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lebmaps/kernels.hpp"

using namespace lebmaps::kernels;

namespace {

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// odd lengths exercise the scalar tails of the vector loops
constexpr std::size_t kSizes[] = {0, 1, 3, 4, 7, 64, 1001};

}  // namespace

TEST_CASE("scalar backend is always present") {
  CHECK(backend_available(Backend::Scalar));
  CHECK(to_string(Backend::Scalar) == "scalar");
}

TEST_CASE("set_backend refuses unavailable backends") {
  const Backend before = active_backend();
  if (!backend_available(Backend::Avx2)) {
    CHECK_FALSE(set_backend(Backend::Avx2));
    CHECK(active_backend() == before);
  }
  CHECK(set_backend(Backend::Scalar));
  CHECK(active_backend() == Backend::Scalar);
  set_backend(before);
}

TEST_CASE("avx2 kernels agree with scalar kernels") {
  const KernelTable* vec = avx2_table();
  if (vec == nullptr) {
    MESSAGE("AVX2 backend not available on this host");
    return;
  }
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(7);

  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto a = uniform(rng, n, -2.0, 2.0);
    const auto b = uniform(rng, n, -2.0, 2.0);
    const auto d1 = uniform(rng, n, 1.1, 4.0);
    const auto d2 = uniform(rng, n, 1.1, 4.0);

    std::vector<double> o1(n), o2(n);
    ref.transfer_combine(a.data(), d1.data(), b.data(), d2.data(), o1.data(), n);
    vec->transfer_combine(a.data(), d1.data(), b.data(), d2.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(o2[i] == doctest::Approx(o1[i]).epsilon(1e-14));

    CHECK(vec->trapezoid(a.data(), n, 0.01) == doctest::Approx(ref.trapezoid(a.data(), n, 0.01)).epsilon(1e-12));
    CHECK(vec->max_abs_diff(a.data(), b.data(), n) == ref.max_abs_diff(a.data(), b.data(), n));
    CHECK(vec->max_circle_diff(a.data(), b.data(), n) ==
          doctest::Approx(ref.max_circle_diff(a.data(), b.data(), n)).epsilon(1e-14));
    CHECK(vec->l1_trapezoid_diff(a.data(), b.data(), n, 0.01) ==
          doctest::Approx(ref.l1_trapezoid_diff(a.data(), b.data(), n, 0.01)).epsilon(1e-12));

    const auto y = uniform(rng, n, 0.0, 1.0);
    CHECK(vec->lebesgue_defect(a.data(), b.data(), y.data(), 0.5, n) ==
          doctest::Approx(ref.lebesgue_defect(a.data(), b.data(), y.data(), 0.5, n)).epsilon(1e-14));
  }
}

TEST_CASE("avx2 hermite and lerp agree with scalar") {
  const KernelTable* vec = avx2_table();
  if (vec == nullptr) return;
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(11);

  const std::size_t knots = 33;
  std::vector<double> kx(knots), ky(knots), kd(knots);
  for (std::size_t i = 0; i < knots; ++i) {
    kx[i] = static_cast<double>(i) / (knots - 1);
    ky[i] = kx[i] * kx[i] + kx[i];
    kd[i] = 2.0 * kx[i] + 1.0;
  }
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    auto x = uniform(rng, n, 0.0, 1.0);
    std::vector<std::int32_t> seg(n);
    for (std::size_t j = 0; j < n; ++j)
      seg[j] = static_cast<std::int32_t>(std::min<double>(std::floor(x[j] * (knots - 1)), knots - 2));
    std::vector<double> v1(n), v2(n), g1(n), g2(n);
    ref.hermite_eval(kx.data(), ky.data(), kd.data(), seg.data(), x.data(), v1.data(), g1.data(), n);
    vec->hermite_eval(kx.data(), ky.data(), kd.data(), seg.data(), x.data(), v2.data(), g2.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(v2[j] == doctest::Approx(v1[j]).epsilon(1e-14));
      CHECK(g2[j] == doctest::Approx(g1[j]).epsilon(1e-13));
      // the interpolant of a quadratic with exact slopes is exact
      CHECK(v1[j] == doctest::Approx(x[j] * x[j] + x[j]).epsilon(1e-13));
    }

    const auto grid = uniform(rng, 129, 0.0, 3.0);
    std::vector<double> l1(n), l2(n);
    ref.lerp_uniform(grid.data(), 128, x.data(), l1.data(), n);
    vec->lerp_uniform(grid.data(), 128, x.data(), l2.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(l2[j] == doctest::Approx(l1[j]).epsilon(1e-14));
  }
}

TEST_CASE("lerp hits the end node") {
  const std::vector<double> grid = {0.0, 1.0, 4.0};
  const std::vector<double> pos = {0.0, 0.25, 1.0};
  std::vector<double> out(3);
  lerp_uniform(grid, pos, out);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == doctest::Approx(0.5));
  CHECK(out[2] == 4.0);
}
