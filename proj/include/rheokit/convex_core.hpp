#pragma once

// Convex calculus for radial (even) functions on the half-line, on sampled data.
//
// A SampledFunction stands for its piecewise-linear interpolant. On that class
// every operation here is exact up to rounding: the conjugate of a PL function
// is attained at nodes, and the min-plus convolution of convex sequences on a
// shared uniform grid equals the infimal convolution of their interpolants.
// What is approximate is only the sampling of a smooth function in the first
// place.

#include <optional>
#include <vector>

#include "rheokit/sampled_function.hpp"
#include "rheokit/simd/kernels.hpp"
#include "rheokit/subdiff_interval.hpp"

namespace rheokit {

enum class TransformMethod {
  Exhaustive,  ///< max over every primal node (reference path)
  Sweep,       ///< single pass exploiting that the maximizer is nondecreasing in s
};

struct ComputeOptions {
  TransformMethod method = TransformMethod::Exhaustive;
  std::optional<simd::Isa> isa;  ///< defaults to simd::preferred_isa()
};

/// Uniform dual grid [0, right slope of f at its last node]. For a bounded
/// domain the right slope is infinite and twice the last finite chord slope
/// is used instead (1 if that is zero).
std::vector<double> default_dual_grid(const SampledFunction& f, std::size_t points = 2048);

/// Dual grid holding 0, every chord slope of each function (deduplicated) and
/// one node beyond the largest slope. The conjugates of the interpolants are
/// piecewise linear with kinks exactly there, so transforming back from this
/// grid loses nothing.
std::vector<double> slope_adapted_grid(const SampledFunction& f);
std::vector<double> slope_adapted_grid(const SampledFunction& f, const SampledFunction& g);

/// f*(s) = sup_v { s v - f(v) } at each node of `dual_grid`.
///
/// If f's domain is unbounded past the grid, f* is +inf wherever s exceeds the
/// last chord slope (the supremum would run off the grid); otherwise it is
/// finite everywhere.
SampledFunction legendre_transform(const SampledFunction& f, std::vector<double> dual_grid,
                                   const ComputeOptions& opts = {});

inline SampledFunction legendre_transform(const SampledFunction& f, const GridSpec& dual,
                                          const ComputeOptions& opts = {}) {
  return legendre_transform(f, uniform_grid(dual), opts);
}

/// [f □ g](v) = min over grid splits of f(u) + g(v - u), on f's grid.
/// g is resampled onto f's grid first when the grids differ; both must be
/// uniform.
SampledFunction inf_convolve_direct(const SampledFunction& f, const SampledFunction& g,
                                    const ComputeOptions& opts = {});

/// (f* + g*)* using conjugates on the slope-adapted dual grid of both inputs.
SampledFunction inf_convolve_via_conjugate(const SampledFunction& f, const SampledFunction& g,
                                           const ComputeOptions& opts = {});

/// Moreau-Yosida envelope: f □ |.|^2 / (2 eps).
SampledFunction yosida(const SampledFunction& f, double eps, const ComputeOptions& opts = {});

/// Subdifferential of the even extension of f at v >= 0. At v = 0 it is
/// [-f'(0+), f'(0+)]; at the end of a bounded domain the upper end is +inf.
SubdiffInterval subdifferential(const SampledFunction& f, double v);

/// f(v) + f*(s) - s v: nonnegative, zero exactly on the graph of the subdifferential.
double fenchel_young_residual(const SampledFunction& f, const SampledFunction& fstar, double v,
                              double s);

/// Samples g onto `grid` by linear interpolation (+inf outside g's domain).
SampledFunction resample(const SampledFunction& g, std::span<const double> grid);

}  // namespace rheokit
