// AArch64 only; Advanced SIMD is part of the base ISA there.

#include <arm_neon.h>

#include <limits>

#include "rheokit/simd/kernels.hpp"

namespace rheokit::simd::detail {

double max_affine_neon(const double* x, const double* f, std::size_t n, double s) {
  const float64x2_t sv = vdupq_n_f64(s);
  float64x2_t acc0 = vdupq_n_f64(-std::numeric_limits<double>::infinity());
  float64x2_t acc1 = acc0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t p0 = vmulq_f64(sv, vld1q_f64(x + i));
    const float64x2_t p1 = vmulq_f64(sv, vld1q_f64(x + i + 2));
    acc0 = vmaxq_f64(acc0, vsubq_f64(p0, vld1q_f64(f + i)));
    acc1 = vmaxq_f64(acc1, vsubq_f64(p1, vld1q_f64(f + i + 2)));
  }
  double best = vmaxvq_f64(vmaxq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double v = s * x[i] - f[i];
    if (v > best) best = v;
  }
  return best;
}

double min_sum_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(std::numeric_limits<double>::infinity());
  float64x2_t acc1 = acc0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vminq_f64(acc0, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc1 = vminq_f64(acc1, vaddq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double best = vminvq_f64(vminq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double v = a[i] + b[i];
    if (v < best) best = v;
  }
  return best;
}

}  // namespace rheokit::simd::detail
