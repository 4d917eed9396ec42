#include "rheokit/convex_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rheokit/error.hpp"

namespace rheokit {

namespace {

constexpr double kSlopeTieTol = 1e-12;
constexpr double kSlopeMergeTol = 1e-13;
constexpr double kNodeMatchTol = 1e-12;

const simd::Kernels& pick(const ComputeOptions& opts) {
  return opts.isa ? simd::kernels(*opts.isa) : simd::kernels();
}

void append_slopes(const SampledFunction& f, std::vector<double>& out) {
  for (std::size_t i = 0; i + 1 < f.finite_sup(); ++i) out.push_back(std::max(0.0, f.chord_slope(i)));
}

std::vector<double> finish_slope_grid(std::vector<double> slopes) {
  std::sort(slopes.begin(), slopes.end());
  std::vector<double> grid{0.0};
  for (double s : slopes) {
    if (s > grid.back() + kSlopeMergeTol * std::max(1.0, s)) grid.push_back(s);
  }
  const double top = grid.back();
  grid.push_back(top + std::max(1.0, top));
  return grid;
}

// g on f's grid, or the original when the grids already agree.
SampledFunction on_grid_of(const SampledFunction& f, const SampledFunction& g) {
  if (std::ranges::equal(f.grid(), g.grid())) return g;
  return resample(g, f.grid());
}

}  // namespace

std::vector<double> default_dual_grid(const SampledFunction& f, std::size_t points) {
  double upper = f.last_slope();
  if (f.bounded_domain()) upper *= 2.0;
  if (!(upper > 0.0)) upper = 1.0;
  return uniform_grid({upper, points});
}

std::vector<double> slope_adapted_grid(const SampledFunction& f) {
  std::vector<double> slopes;
  append_slopes(f, slopes);
  return finish_slope_grid(std::move(slopes));
}

std::vector<double> slope_adapted_grid(const SampledFunction& f, const SampledFunction& g) {
  std::vector<double> slopes;
  append_slopes(f, slopes);
  append_slopes(g, slopes);
  return finish_slope_grid(std::move(slopes));
}

SampledFunction legendre_transform(const SampledFunction& f, std::vector<double> dual_grid,
                                   const ComputeOptions& opts) {
  if (dual_grid.empty()) throw InvalidInput("legendre transform: empty dual grid");
  if (dual_grid[0] != 0.0) throw InvalidInput("legendre transform: dual grid must start at 0");
  for (std::size_t k = 1; k < dual_grid.size(); ++k) {
    if (!(dual_grid[k] > dual_grid[k - 1]))
      throw InvalidInput("legendre transform: dual grid not strictly increasing");
  }

  const std::size_t n = f.finite_sup();
  const double* x = f.grid().data();
  const double* v = f.values().data();

  // Past the last chord slope of an unbounded function the supremum is
  // attained beyond the sampled range.
  double resolvable = kInf;
  if (!f.bounded_domain()) {
    const double last = f.last_slope();
    resolvable = last + kSlopeTieTol * std::max(1.0, std::abs(last));
  }

  std::vector<double> out(dual_grid.size(), kInf);
  if (opts.method == TransformMethod::Exhaustive) {
    const auto& k = pick(opts);
    for (std::size_t j = 0; j < dual_grid.size(); ++j) {
      const double s = dual_grid[j];
      if (s > resolvable) break;
      out[j] = k.max_affine(x, v, n, s);
    }
  } else {
    std::size_t i = 0;
    for (std::size_t j = 0; j < dual_grid.size(); ++j) {
      const double s = dual_grid[j];
      if (s > resolvable) break;
      while (i + 1 < n && s * x[i + 1] - v[i + 1] >= s * x[i] - v[i]) ++i;
      out[j] = s * x[i] - v[i];
    }
  }
  return SampledFunction(std::move(dual_grid), std::move(out));
}

SampledFunction resample(const SampledFunction& g, std::span<const double> grid) {
  std::vector<double> values(grid.size());
  const double end = g.grid().back();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (x > end) {
      if (!g.bounded_domain()) {
        std::ostringstream msg;
        msg << "incompatible grids: function sampled up to " << end << " but needed at " << x;
        throw InvalidInput(msg.str());
      }
      values[i] = kInf;
    } else {
      values[i] = g(x);
    }
  }
  return SampledFunction(std::vector<double>(grid.begin(), grid.end()), std::move(values));
}

SampledFunction inf_convolve_direct(const SampledFunction& f, const SampledFunction& g,
                                    const ComputeOptions& opts) {
  const SampledFunction gg = on_grid_of(f, g);
  if (!f.uniform()) throw InvalidInput("direct infimal convolution needs a uniform grid");

  const std::size_t n = f.size();
  const std::size_t fa = f.finite_sup();
  const std::size_t gb = gg.finite_sup();
  const auto fv = f.values();
  const auto gv = gg.values();
  // g reversed, so that g[i - k] is contiguous in k
  std::vector<double> grev(gv.rbegin(), gv.rend());

  const auto& k = pick(opts);
  std::vector<double> out(n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k_lo = i >= gb ? i - (gb - 1) : 0;
    const std::size_t k_hi = std::min(i, fa - 1);
    if (k_lo > k_hi) break;
    out[i] = k.min_sum(fv.data() + k_lo, grev.data() + (n - 1 - i + k_lo), k_hi - k_lo + 1);
  }
  return SampledFunction(std::vector<double>(f.grid().begin(), f.grid().end()), std::move(out));
}

SampledFunction inf_convolve_via_conjugate(const SampledFunction& f, const SampledFunction& g,
                                           const ComputeOptions& opts) {
  const SampledFunction gg = on_grid_of(f, g);
  const std::vector<double> dual = slope_adapted_grid(f, gg);
  const SampledFunction fs = legendre_transform(f, dual, opts);
  const SampledFunction gs = legendre_transform(gg, dual, opts);
  std::vector<double> sum(dual.size());
  for (std::size_t j = 0; j < dual.size(); ++j) sum[j] = fs.value(j) + gs.value(j);
  const SampledFunction conj_sum(dual, std::move(sum));
  return legendre_transform(conj_sum, std::vector<double>(f.grid().begin(), f.grid().end()), opts);
}

SampledFunction yosida(const SampledFunction& f, double eps, const ComputeOptions& opts) {
  if (!(eps > 0.0)) throw InvalidInput("yosida: eps must be positive");
  std::vector<double> q(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) q[i] = f.x(i) * f.x(i) / (2.0 * eps);
  const SampledFunction quad(std::vector<double>(f.grid().begin(), f.grid().end()), std::move(q));
  return inf_convolve_direct(f, quad, opts);
}

SubdiffInterval subdifferential(const SampledFunction& f, double v) {
  const auto grid = f.grid();
  if (!(v >= 0.0) || v > grid.back() * (1.0 + kNodeMatchTol)) {
    std::ostringstream msg;
    msg << "subdifferential: argument " << v << " outside grid [0, " << grid.back() << "]";
    throw OutOfRangeError(msg.str());
  }
  const std::size_t fs = f.finite_sup();
  auto right_slope_at = [&](std::size_t i) {
    if (i + 1 < fs) return f.chord_slope(i);
    if (f.bounded_domain()) return kInf;
    return i == 0 ? 0.0 : f.chord_slope(i - 1);
  };

  auto it = std::lower_bound(grid.begin(), grid.end(), v);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  const double tol = kNodeMatchTol * std::max(1.0, grid.back());
  if (i == grid.size()) i = grid.size() - 1;
  if (i > 0 && std::abs(grid[i - 1] - v) <= tol) --i;
  const bool at_node = std::abs(grid[i] - v) <= tol;

  if (at_node) {
    if (i >= fs) return SubdiffInterval::saturated();
    const double right = right_slope_at(i);
    const double left = i == 0 ? -right : f.chord_slope(i - 1);
    return {left, right};
  }
  // grid[i-1] < v < grid[i]
  if (i >= fs) return SubdiffInterval::saturated();
  return SubdiffInterval::point(f.chord_slope(i - 1));
}

double fenchel_young_residual(const SampledFunction& f, const SampledFunction& fstar, double v,
                              double s) {
  const double fv = f(v);
  const double fsv = fstar(s);
  if (fv == kInf || fsv == kInf) return kInf;
  return fv + fsv - s * v;
}

}  // namespace rheokit
