#pragma once

#include <algorithm>
#include <limits>

namespace rheokit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi] standing for a set-valued scalar subdifferential.
/// hi == +inf marks a normal cone at a support boundary; lo == hi == +inf marks
/// an argument outside the effective domain (saturation).
struct SubdiffInterval {
  double lo = 0.0;
  double hi = 0.0;

  static constexpr SubdiffInterval point(double v) { return {v, v}; }
  static constexpr SubdiffInterval saturated() { return {kInf, kInf}; }

  constexpr bool is_point() const { return lo == hi; }
  constexpr bool is_saturated() const { return lo == kInf; }
  constexpr bool contains(double v) const { return lo <= v && v <= hi; }

  constexpr double midpoint() const {
    if (hi == kInf) return kInf;
    return 0.5 * (lo + hi);
  }

  friend constexpr SubdiffInterval operator+(SubdiffInterval a, SubdiffInterval b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  SubdiffInterval& operator+=(SubdiffInterval b) {
    lo += b.lo;
    hi += b.hi;
    return *this;
  }
  friend constexpr bool operator==(SubdiffInterval, SubdiffInterval) = default;
};

}  // namespace rheokit
