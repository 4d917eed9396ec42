// Built with -mavx2 -ffp-contract=off; only reached after a runtime CPU check.

#include <immintrin.h>

#include <limits>

#include "rheokit/simd/kernels.hpp"

namespace rheokit::simd::detail {

namespace {

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_max_pd(lo, hi);
  m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_min_pd(lo, hi);
  m = _mm_min_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}

}  // namespace

double max_affine_avx2(const double* x, const double* f, std::size_t n, double s) {
  const __m256d sv = _mm256_set1_pd(s);
  __m256d acc0 = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d acc1 = acc0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    // mul and sub stay separate so results match the scalar kernel exactly
    const __m256d p0 = _mm256_mul_pd(sv, _mm256_loadu_pd(x + i));
    const __m256d p1 = _mm256_mul_pd(sv, _mm256_loadu_pd(x + i + 4));
    acc0 = _mm256_max_pd(acc0, _mm256_sub_pd(p0, _mm256_loadu_pd(f + i)));
    acc1 = _mm256_max_pd(acc1, _mm256_sub_pd(p1, _mm256_loadu_pd(f + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(sv, _mm256_loadu_pd(x + i));
    acc0 = _mm256_max_pd(acc0, _mm256_sub_pd(p, _mm256_loadu_pd(f + i)));
  }
  double best = hmax(_mm256_max_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double v = s * x[i] - f[i];
    if (v > best) best = v;
  }
  return best;
}

double min_sum_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d acc1 = acc0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_min_pd(acc0, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_min_pd(acc1,
                         _mm256_add_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_min_pd(acc0, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double best = hmin(_mm256_min_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double v = a[i] + b[i];
    if (v < best) best = v;
  }
  return best;
}

}  // namespace rheokit::simd::detail
