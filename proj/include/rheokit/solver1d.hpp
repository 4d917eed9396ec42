#pragma once

#include <functional>
#include <optional>

namespace rheokit {

enum class RootMethod {
  Bisection,  ///< derivative-free reference; insensitive to kinks
  Illinois,   ///< regula falsi with the Illinois fix, bisection fallback
};

struct SolverOptions {
  /// Relative bracket width at which a solve stops (floored at a few ulp).
  /// Tighter than 1e-12 so that stresses far above the moduli still resolve
  /// to 1e-10 of the moduli.
  double rtol = 1e-15;
  int max_iterations = 200;
  int max_doublings = 1024;
  /// Bisection is the reference; Illinois keeps the same bracket and agrees
  /// with it to the tolerance above at a fraction of the cost.
  RootMethod serial_method = RootMethod::Illinois;
  RootMethod parallel_method = RootMethod::Illinois;
};

/// Smallest x >= 0 with fn(x) >= target (fn(x) > target when `strict`), for a
/// nondecreasing fn that may return +inf. The bracket grows by doubling from
/// [0, 1]; returns nullopt when it cannot be closed within max_doublings.
std::optional<double> threshold_search(const std::function<double(double)>& fn, double target,
                                       bool strict, RootMethod method,
                                       const SolverOptions& opts = {});

}  // namespace rheokit
