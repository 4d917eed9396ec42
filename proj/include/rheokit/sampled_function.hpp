#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rheokit {

/// Uniform grid [0, upper] with `points` nodes.
struct GridSpec {
  double upper = 10.0;
  std::size_t points = 2048;
};

std::vector<double> uniform_grid(const GridSpec& spec);

/// Scalar convex function of a non-negative argument, sampled on a grid.
///
/// The grid starts at 0 and is strictly increasing. Values are finite on the
/// prefix [0, finite_sup) and +inf from finite_sup on; the function is read as
/// the piecewise-linear interpolant of its finite samples. When
/// finite_sup == size() the effective domain runs past the last node and is
/// not resolved there.
class SampledFunction {
 public:
  /// Validates grid monotonicity, convexity of the finite prefix and the
  /// minimum at 0. Entries at or past `finite_sup` are replaced by +inf.
  SampledFunction(std::vector<double> grid, std::vector<double> values,
                  std::size_t finite_sup);

  /// finite_sup is taken as the first +inf entry of `values`.
  SampledFunction(std::vector<double> grid, std::vector<double> values);

  std::size_t size() const { return grid_.size(); }
  std::size_t finite_sup() const { return finite_sup_; }
  bool bounded_domain() const { return finite_sup_ < grid_.size(); }
  bool uniform() const { return uniform_; }

  std::span<const double> grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double x(std::size_t i) const { return grid_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  /// Right end of the effective domain: the last finite node.
  double domain_end() const { return grid_[finite_sup_ - 1]; }

  /// Max |value| over the finite prefix, floored at 1.
  double scale() const;

  /// Piecewise-linear evaluation; +inf past the effective domain, throws
  /// OutOfRangeError for v < 0 or v beyond the last node.
  double operator()(double v) const;

  /// Chord slope between nodes i and i+1 (both finite).
  double chord_slope(std::size_t i) const;

  /// Slope of the last finite chord; 0 for a single finite node.
  double last_slope() const;

  /// Copy with values shifted so that the value at 0 is 0.
  SampledFunction normalized() const;

  friend bool operator==(const SampledFunction&, const SampledFunction&) = default;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::size_t finite_sup_ = 0;
  bool uniform_ = false;
};

}  // namespace rheokit
