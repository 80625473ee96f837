// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace lebmaps::kernels::detail {
namespace {

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return std::max(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void hermite_eval_avx2(const double* kx, const double* ky, const double* kd,
                       const std::int32_t* seg, const double* x, double* value,
                       double* deriv, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d six = _mm256_set1_pd(6.0);
  const __m128i step = _mm_set1_epi32(1);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m128i i0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(seg + j));
    const __m128i i1 = _mm_add_epi32(i0, step);
    const __m256d x0 = _mm256_i32gather_pd(kx, i0, 8);
    const __m256d x1 = _mm256_i32gather_pd(kx, i1, 8);
    const __m256d y0 = _mm256_i32gather_pd(ky, i0, 8);
    const __m256d y1 = _mm256_i32gather_pd(ky, i1, 8);
    const __m256d d0 = _mm256_i32gather_pd(kd, i0, 8);
    const __m256d d1 = _mm256_i32gather_pd(kd, i1, 8);
    const __m256d h = _mm256_sub_pd(x1, x0);
    const __m256d t = _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(x + j), x0), h);
    const __m256d s = _mm256_sub_pd(one, t);
    const __m256d tt = _mm256_mul_pd(t, t);
    const __m256d ss = _mm256_mul_pd(s, s);
    const __m256d h00 = _mm256_mul_pd(_mm256_fmadd_pd(two, t, one), ss);
    const __m256d h10 = _mm256_mul_pd(t, ss);
    const __m256d h01 = _mm256_mul_pd(tt, _mm256_fnmadd_pd(two, t, three));
    const __m256d h11 = _mm256_mul_pd(tt, _mm256_sub_pd(t, one));
    __m256d v = _mm256_mul_pd(h00, y0);
    v = _mm256_fmadd_pd(_mm256_mul_pd(h10, h), d0, v);
    v = _mm256_fmadd_pd(h01, y1, v);
    v = _mm256_fmadd_pd(_mm256_mul_pd(h11, h), d1, v);
    _mm256_storeu_pd(value + j, v);
    const __m256d secant = _mm256_div_pd(_mm256_sub_pd(y1, y0), h);
    __m256d d = _mm256_mul_pd(_mm256_mul_pd(six, _mm256_mul_pd(t, s)), secant);
    d = _mm256_fmadd_pd(_mm256_mul_pd(s, _mm256_fnmadd_pd(three, t, one)), d0, d);
    d = _mm256_fmadd_pd(_mm256_mul_pd(t, _mm256_fmsub_pd(three, t, two)), d1, d);
    _mm256_storeu_pd(deriv + j, d);
  }
  if (j < n) kScalarTable.hermite_eval(kx, ky, kd, seg + j, x + j, value + j, deriv + j, n - j);
}

void lerp_uniform_avx2(const double* grid, std::size_t cells, const double* pos,
                       double* out, std::size_t n) {
  const __m256d scale = _mm256_set1_pd(static_cast<double>(cells));
  const __m128i lo = _mm_setzero_si128();
  const __m128i hi = _mm_set1_epi32(static_cast<int>(cells) - 1);
  const __m128i step = _mm_set1_epi32(1);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d s = _mm256_mul_pd(_mm256_loadu_pd(pos + j), scale);
    __m128i c = _mm256_cvttpd_epi32(_mm256_floor_pd(s));
    c = _mm_min_epi32(_mm_max_epi32(c, lo), hi);
    const __m256d w = _mm256_sub_pd(s, _mm256_cvtepi32_pd(c));
    const __m256d g0 = _mm256_i32gather_pd(grid, c, 8);
    const __m256d g1 = _mm256_i32gather_pd(grid, _mm_add_epi32(c, step), 8);
    _mm256_storeu_pd(out + j, _mm256_fmadd_pd(w, _mm256_sub_pd(g1, g0), g0));
  }
  if (j < n) kScalarTable.lerp_uniform(grid, cells, pos + j, out + j, n - j);
}

void transfer_combine_avx2(const double* h1, const double* d1, const double* h2,
                           const double* d2, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_div_pd(_mm256_loadu_pd(h1 + j), _mm256_loadu_pd(d1 + j));
    const __m256d b = _mm256_div_pd(_mm256_loadu_pd(h2 + j), _mm256_loadu_pd(d2 + j));
    _mm256_storeu_pd(out + j, _mm256_add_pd(a, b));
  }
  if (j < n) kScalarTable.transfer_combine(h1 + j, d1 + j, h2 + j, d2 + j, out + j, n - j);
}

double trapezoid_avx2(const double* v, std::size_t n, double dx) {
  if (n < 2) return 0.0;
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 1;
  for (; j + 4 <= n - 1; j += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + j));
  double interior = hsum(acc);
  for (; j + 1 < n; ++j) interior += v[j];
  return dx * (interior + 0.5 * (v[0] + v[n - 1]));
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    acc = _mm256_max_pd(acc, vabs(_mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j))));
  double m = hmax(acc);
  if (j < n) m = std::max(m, kScalarTable.max_abs_diff(a + j, b + j, n - j));
  return m;
}

double max_circle_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d d = vabs(_mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j)));
    d = _mm256_sub_pd(d, _mm256_floor_pd(d));
    acc = _mm256_max_pd(acc, _mm256_min_pd(d, _mm256_sub_pd(one, d)));
  }
  double m = hmax(acc);
  if (j < n) m = std::max(m, kScalarTable.max_circle_diff(a + j, b + j, n - j));
  return m;
}

double l1_trapezoid_diff_avx2(const double* a, const double* b, std::size_t n, double dx) {
  if (n < 2) return 0.0;
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 1;
  for (; j + 4 <= n - 1; j += 4)
    acc = _mm256_add_pd(acc, vabs(_mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j))));
  double interior = hsum(acc);
  for (; j + 1 < n; ++j) interior += std::abs(a[j] - b[j]);
  return dx * (interior + 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[n - 1] - b[n - 1])));
}

double lebesgue_defect_avx2(const double* pre1, const double* pre2, const double* y,
                            double offset, std::size_t n) {
  const __m256d off = _mm256_set1_pd(offset);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d tail = _mm256_sub_pd(_mm256_loadu_pd(pre2 + j), off);
    const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(pre1 + j), tail);
    acc = _mm256_max_pd(acc, vabs(_mm256_sub_pd(sum, _mm256_loadu_pd(y + j))));
  }
  double m = hmax(acc);
  if (j < n) m = std::max(m, kScalarTable.lebesgue_defect(pre1 + j, pre2 + j, y + j, offset, n - j));
  return m;
}

}  // namespace

const KernelTable kAvx2Table{
    hermite_eval_avx2,   lerp_uniform_avx2,      transfer_combine_avx2,
    trapezoid_avx2,      max_abs_diff_avx2,      max_circle_diff_avx2,
    l1_trapezoid_diff_avx2, lebesgue_defect_avx2,
};

}  // namespace lebmaps::kernels::detail
