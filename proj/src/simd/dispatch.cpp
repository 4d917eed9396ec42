#include <cstdlib>
#include <string>

#include "rheokit/error.hpp"
#include "rheokit/simd/kernels.hpp"

namespace rheokit::simd {

namespace {

constexpr Kernels kScalar{Isa::Scalar, detail::max_affine_scalar, detail::min_sum_scalar};
#if defined(RHEOKIT_HAVE_AVX2)
constexpr Kernels kAvx2{Isa::Avx2, detail::max_affine_avx2, detail::min_sum_avx2};
#endif
#if defined(RHEOKIT_HAVE_NEON)
constexpr Kernels kNeon{Isa::Neon, detail::max_affine_neon, detail::min_sum_neon};
#endif

Isa detect() {
  if (const char* env = std::getenv("RHEOKIT_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
    if (want == "neon" && available(Isa::Neon)) return Isa::Neon;
  }
  if (available(Isa::Avx2)) return Isa::Avx2;
  if (available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(RHEOKIT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(RHEOKIT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa preferred_isa() {
  static const Isa isa = detect();
  return isa;
}

const Kernels& kernels(Isa isa) {
  if (!available(isa))
    throw UnsupportedMode("SIMD variant '" + std::string(name(isa)) + "' is not available");
  switch (isa) {
#if defined(RHEOKIT_HAVE_AVX2)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(RHEOKIT_HAVE_NEON)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

}  // namespace rheokit::simd
