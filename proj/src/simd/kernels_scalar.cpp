#include <limits>

#include "rheokit/simd/kernels.hpp"

namespace rheokit::simd::detail {

double max_affine_scalar(const double* x, const double* f, std::size_t n, double s) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = s * x[i] - f[i];
    if (v > best) best = v;
  }
  return best;
}

double min_sum_scalar(const double* a, const double* b, std::size_t n) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = a[i] + b[i];
    if (v < best) best = v;
  }
  return best;
}

}  // namespace rheokit::simd::detail
