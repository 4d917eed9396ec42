#include "rheokit/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rheokit {

namespace {

bool resolved(double lo, double hi, double rtol) {
  const double mid = lo + 0.5 * (hi - lo);
  return mid <= lo || mid >= hi || hi - lo <= rtol * hi;
}

}  // namespace

std::optional<double> threshold_search(const std::function<double(double)>& fn, double target,
                                       bool strict, RootMethod method,
                                       const SolverOptions& opts) {
  const double rtol = std::max(opts.rtol, 4.0 * std::numeric_limits<double>::epsilon());
  auto excess = [&](double x) { return fn(x) - target; };
  auto holds = [strict](double g) { return strict ? g > 0.0 : g >= 0.0; };

  double g_lo = excess(0.0);
  if (holds(g_lo)) return 0.0;

  double lo = 0.0;
  double hi = 1.0;
  double g_hi = excess(hi);
  for (int k = 0; !holds(g_hi); ++k) {
    if (k >= opts.max_doublings) return std::nullopt;
    lo = hi;
    g_lo = g_hi;
    hi *= 2.0;
    if (std::isinf(hi)) return std::nullopt;
    g_hi = excess(hi);
  }

  int retained = 0;  // +n: lo kept n times in a row, -n: hi kept
  for (int it = 0; it < opts.max_iterations && !resolved(lo, hi, rtol); ++it) {
    double x = lo + 0.5 * (hi - lo);
    bool secant = false;
    if (method == RootMethod::Illinois && std::isfinite(g_lo) && std::isfinite(g_hi) &&
        g_hi > g_lo) {
      const double rf = hi - g_hi * (hi - lo) / (g_hi - g_lo);
      if (rf > lo && rf < hi) {
        x = rf;
        secant = true;
      }
    }
    const double g = excess(x);
    const bool up = holds(g);
    if (up) {
      hi = x;
      g_hi = g;
      retained = retained > 0 ? retained + 1 : 1;
      if (retained >= 2) g_lo *= 0.5;
    } else {
      lo = x;
      g_lo = g;
      retained = retained < 0 ? retained - 1 : -1;
      if (retained <= -2) g_hi *= 0.5;
    }
    // A secant step that lands on the root leaves the far end in place; probe
    // just across it so that the bracket can close.
    if (secant && !resolved(lo, hi, rtol)) {
      const double probe = up ? x - 0.5 * rtol * x : x + 0.5 * rtol * x;
      if (probe > lo && probe < hi) {
        const double gp = excess(probe);
        if (holds(gp)) {
          hi = probe;
          g_hi = gp;
        } else {
          lo = probe;
          g_lo = gp;
        }
      }
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace rheokit
