#pragma once

// Inner loops of the sampled convex calculus. Every ISA variant performs the
// same IEEE operations in a different order of a commutative reduction
// (max/min), so all variants return bit-identical results.

#include <cstddef>
#include <string_view>

namespace rheokit::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view name(Isa isa);

/// max_i (s * x[i] - f[i]) over i < n; -inf for n == 0.
using MaxAffineFn = double (*)(const double* x, const double* f, std::size_t n, double s);

/// min_i (a[i] + b[i]) over i < n; +inf for n == 0.
using MinSumFn = double (*)(const double* a, const double* b, std::size_t n);

struct Kernels {
  Isa isa;
  MaxAffineFn max_affine;
  MinSumFn min_sum;
};

/// True when the variant is compiled in and the running CPU supports it.
bool available(Isa isa);

/// Widest available variant, unless RHEOKIT_ISA=scalar|avx2|neon overrides it
/// (read once, on first use).
Isa preferred_isa();

/// Kernel table for one ISA; throws UnsupportedMode if it is not available.
const Kernels& kernels(Isa isa);

inline const Kernels& kernels() { return kernels(preferred_isa()); }

namespace detail {
double max_affine_scalar(const double* x, const double* f, std::size_t n, double s);
double min_sum_scalar(const double* a, const double* b, std::size_t n);
#if defined(RHEOKIT_HAVE_AVX2)
double max_affine_avx2(const double* x, const double* f, std::size_t n, double s);
double min_sum_avx2(const double* a, const double* b, std::size_t n);
#endif
#if defined(RHEOKIT_HAVE_NEON)
double max_affine_neon(const double* x, const double* f, std::size_t n, double s);
double min_sum_neon(const double* a, const double* b, std::size_t n);
#endif
}  // namespace detail

}  // namespace rheokit::simd
