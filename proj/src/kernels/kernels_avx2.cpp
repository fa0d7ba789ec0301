// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after a runtime CPU check; the
// dispatcher in kernels.cpp guarantees that.

#if defined(BECGRAPH_HAVE_AVX2)

#include <immintrin.h>

#include "becgraph/kernels.hpp"

namespace becgraph::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  const __m128d swap = _mm_unpackhi_pd(sum2, sum2);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, swap));
}

void rotate_pair_avx2(double* x, double* y, std::size_t n, double c,
                      double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d nx = _mm256_fmsub_pd(vc, vx, _mm256_mul_pd(vs, vy));
    const __m256d ny = _mm256_fmadd_pd(vs, vx, _mm256_mul_pd(vc, vy));
    _mm256_storeu_pd(x + i, nx);
    _mm256_storeu_pd(y + i, ny);
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double abs2_sum_avx2(const double* re, const double* im, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vr = _mm256_loadu_pd(re + i);
    const __m256d vi = _mm256_loadu_pd(im + i);
    acc = _mm256_fmadd_pd(vr, vr, acc);
    acc = _mm256_fmadd_pd(vi, vi, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += re[i] * re[i] + im[i] * im[i];
  return out;
}

void cmul_inplace_avx2(double* are, double* aim, const double* bre,
                       const double* bim, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(are + i);
    const __m256d ai = _mm256_loadu_pd(aim + i);
    const __m256d br = _mm256_loadu_pd(bre + i);
    const __m256d bi = _mm256_loadu_pd(bim + i);
    const __m256d r = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
    const __m256d j = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
    _mm256_storeu_pd(are + i, r);
    _mm256_storeu_pd(aim + i, j);
  }
  for (; i < n; ++i) {
    const double r = are[i] * bre[i] - aim[i] * bim[i];
    const double j = are[i] * bim[i] + aim[i] * bre[i];
    are[i] = r;
    aim[i] = j;
  }
}

constexpr Ops kAvx2Ops{
    "avx2",    rotate_pair_avx2, dot_avx2,
    axpy_avx2, abs2_sum_avx2,    cmul_inplace_avx2,
};

}  // namespace

namespace detail {
const Ops* avx2_ops_impl() { return &kAvx2Ops; }
}  // namespace detail

}  // namespace becgraph::kernels

#endif  // BECGRAPH_HAVE_AVX2
