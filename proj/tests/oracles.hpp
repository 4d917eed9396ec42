#pragma once

// Reference computations used only by tests. Each one is written from the
// defining formula with plain loops and shares no code with the library.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Root of a nondecreasing fn on [lo, hi] with fn(lo) <= target <= fn(hi), by
/// plain bisection to the last representable midpoint.
inline double bisect(const std::function<double(double)>& fn, double target, double lo, double hi) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (fn(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Root σ >= 0 of (σ/D_dsl)^n + σ/D_dif = ε.
inline double dif_dsl_stress(double D_dif, double D_dsl, double n, double eps) {
  if (eps == 0.0) return 0.0;
  auto h = [&](double s) { return std::pow(s / D_dsl, n) + s / D_dif; };
  double hi = 1.0;
  while (h(hi) < eps) hi *= 2.0;
  return bisect(h, eps, 0.0, hi);
}

/// sup_v { s v - f(v) } over v = 0, h, ..., vmax, by exhaustive scan.
inline double conjugate_scan(const std::function<double(double)>& f, double s, double vmax,
                             std::size_t points) {
  double best = -inf;
  for (std::size_t i = 0; i < points; ++i) {
    const double v = vmax * static_cast<double>(i) / static_cast<double>(points - 1);
    best = std::max(best, s * v - f(v));
  }
  return best;
}

/// min over u in [0, v] of f(u) + g(v - u), scanning `points` splits.
inline double inf_convolution_scan(const std::function<double(double)>& f,
                                   const std::function<double(double)>& g, double v,
                                   std::size_t points) {
  double best = inf;
  for (std::size_t i = 0; i < points; ++i) {
    const double u = v * static_cast<double>(i) / static_cast<double>(points - 1);
    best = std::min(best, f(u) + g(v - u));
  }
  return best;
}

/// Huber function σ_A|·| □ ½D|·|².
inline double huber(double sigma_a, double D, double r) {
  return r <= sigma_a / D ? 0.5 * D * r * r : sigma_a * r - 0.5 * sigma_a * sigma_a / D;
}

/// Three-element stress by direct case analysis of Parallel[Serial[plastic, D2], D3].
inline double three_element(double sigma_a, double D2, double D3, double eps) {
  return std::min(D2 * eps, sigma_a) + D3 * eps;
}

/// Backward Euler for de/dt = -E e / D from e0: e_k = e0 / (1 + dt E / D)^k.
inline double linear_maxwell_be(double E, double D, double e0, double dt, std::size_t steps) {
  return e0 / std::pow(1.0 + dt * E / D, static_cast<double>(steps));
}

}  // namespace oracle
