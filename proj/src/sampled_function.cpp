#include "rheokit/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rheokit/error.hpp"
#include "rheokit/subdiff_interval.hpp"

namespace rheokit {

namespace {

constexpr double kConvexityTol = 1e-12;
constexpr double kUniformTol = 1e-9;

std::size_t first_infinite(const std::vector<double>& values) {
  auto it = std::find_if(values.begin(), values.end(),
                         [](double v) { return v == kInf; });
  return static_cast<std::size_t>(it - values.begin());
}

}  // namespace

std::vector<double> uniform_grid(const GridSpec& spec) {
  if (spec.points < 2) throw InvalidInput("uniform grid needs at least 2 points");
  if (!(spec.upper > 0.0) || !std::isfinite(spec.upper))
    throw InvalidInput("uniform grid upper bound must be positive and finite");
  std::vector<double> grid(spec.points);
  const double h = spec.upper / static_cast<double>(spec.points - 1);
  for (std::size_t i = 0; i < spec.points; ++i) grid[i] = h * static_cast<double>(i);
  grid.back() = spec.upper;
  return grid;
}

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values)
    : SampledFunction(std::move(grid), values, first_infinite(values)) {}

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values,
                                 std::size_t finite_sup)
    : grid_(std::move(grid)), values_(std::move(values)), finite_sup_(finite_sup) {
  if (grid_.empty()) throw InvalidInput("sampled function: empty grid");
  if (grid_.size() != values_.size()) {
    std::ostringstream msg;
    msg << "sampled function: grid has " << grid_.size() << " nodes but "
        << values_.size() << " values";
    throw InvalidInput(msg.str());
  }
  if (grid_[0] != 0.0) throw InvalidInput("sampled function: grid must start at 0");
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1]) || !std::isfinite(grid_[i])) {
      std::ostringstream msg;
      msg << "sampled function: grid not strictly increasing at index " << i;
      throw InvalidInput(msg.str());
    }
  }
  if (finite_sup_ == 0 || finite_sup_ > grid_.size())
    throw InvalidInput("sampled function: finite support must contain the origin");
  for (std::size_t i = 0; i < finite_sup_; ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "sampled function: non-finite value at index " << i
          << " inside the finite support";
      throw InvalidInput(msg.str());
    }
  }
  std::fill(values_.begin() + static_cast<std::ptrdiff_t>(finite_sup_), values_.end(), kInf);

  const double tol = kConvexityTol * scale();
  for (std::size_t i = 0; i < finite_sup_; ++i) {
    if (values_[i] < values_[0] - tol) {
      std::ostringstream msg;
      msg << "sampled function: value at index " << i << " is below the value at 0";
      throw InvalidInput(msg.str());
    }
  }
  // Convexity on a possibly non-uniform grid: chord slopes are nondecreasing.
  // Slopes are compared after scaling by the local spacing so the tolerance
  // stays in value units.
  for (std::size_t i = 1; i + 1 < finite_sup_; ++i) {
    const double left = chord_slope(i - 1);
    const double right = chord_slope(i);
    const double h = std::min(grid_[i] - grid_[i - 1], grid_[i + 1] - grid_[i]);
    if ((right - left) * h < -tol) {
      std::ostringstream msg;
      msg << "sampled function: not convex at index " << i;
      throw InvalidInput(msg.str());
    }
  }

  uniform_ = true;
  if (grid_.size() > 2) {
    const double h = grid_[1];
    for (std::size_t i = 1; i < grid_.size(); ++i) {
      if (std::abs((grid_[i] - grid_[i - 1]) - h) > kUniformTol * h) {
        uniform_ = false;
        break;
      }
    }
  }
}

double SampledFunction::scale() const {
  double m = 1.0;
  for (std::size_t i = 0; i < finite_sup_; ++i) m = std::max(m, std::abs(values_[i]));
  return m;
}

double SampledFunction::chord_slope(std::size_t i) const {
  return (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
}

double SampledFunction::last_slope() const {
  if (finite_sup_ < 2) return 0.0;
  return chord_slope(finite_sup_ - 2);
}

double SampledFunction::operator()(double v) const {
  if (!(v >= 0.0) || v > grid_.back()) {
    std::ostringstream msg;
    msg << "sampled function: argument " << v << " outside grid [0, " << grid_.back() << "]";
    throw OutOfRangeError(msg.str());
  }
  auto it = std::lower_bound(grid_.begin(), grid_.end(), v);
  const auto i = static_cast<std::size_t>(it - grid_.begin());
  if (grid_[i] == v) return values_[i];
  // grid_[i-1] < v < grid_[i]
  if (i >= finite_sup_) return kInf;
  const double t = (v - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
  return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

SampledFunction SampledFunction::normalized() const {
  std::vector<double> shifted = values_;
  const double base = values_[0];
  for (std::size_t i = 0; i < finite_sup_; ++i) shifted[i] -= base;
  return SampledFunction(grid_, std::move(shifted), finite_sup_);
}

}  // namespace rheokit
