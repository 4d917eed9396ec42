#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rheokit/convex_core.hpp"
#include "rheokit/error.hpp"

using namespace rheokit;

namespace {

template <class F>
SampledFunction tabulate(F f, double upper, std::size_t points) {
  auto grid = uniform_grid({upper, points});
  std::vector<double> values;
  values.reserve(grid.size());
  for (double x : grid) values.push_back(f(x));
  return SampledFunction(std::move(grid), std::move(values));
}

double max_abs_diff_on(const SampledFunction& a, const SampledFunction& b, std::size_t upto) {
  double d = 0.0;
  for (std::size_t i = 0; i < upto; ++i) d = std::max(d, std::abs(a.value(i) - b.value(i)));
  return d;
}

}  // namespace

TEST_CASE("sampled function rejects malformed grids") {
  CHECK_THROWS_AS(SampledFunction({}, {}), InvalidInput);
  CHECK_THROWS_AS(SampledFunction({0.0, 2.0, 1.0}, {0.0, 1.0, 2.0}), InvalidInput);
  CHECK_THROWS_AS(SampledFunction({0.5, 1.0}, {0.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(SampledFunction({0.0, 1.0, 2.0}, {0.0, 2.0, 3.0}), InvalidInput);  // concave
  CHECK_THROWS_AS(SampledFunction({0.0, 1.0}, {1.0, 0.0}), InvalidInput);            // min not at 0
}

TEST_CASE("sampled function interpolates and marks the infinite part") {
  SampledFunction f({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, 3.0, oracle::inf});
  CHECK(f.finite_sup() == 3);
  CHECK(f.bounded_domain());
  CHECK(f(0.5) == doctest::Approx(0.5));
  CHECK(f(1.5) == doctest::Approx(2.0));
  CHECK(f(2.5) == oracle::inf);
  CHECK_THROWS_AS(f(3.5), OutOfRangeError);
  CHECK_THROWS_AS(f(-0.1), OutOfRangeError);
}

TEST_CASE("conjugate of the self-conjugate quadratic") {
  const auto f = tabulate([](double v) { return 0.5 * v * v; }, 4.0, 2048);
  const auto fs = legendre_transform(f, GridSpec{4.0, 2048});
  const double h = 4.0 / 2047.0;
  CHECK(fs(1.0) == doctest::Approx(0.5).epsilon(h * h));
  CHECK(std::abs(fs(1.0) - 0.5) <= h * h);
}

TEST_CASE("conjugate of |v| is the indicator of the unit ball") {
  const auto f = tabulate([](double v) { return v; }, 4.0, 2048);
  const auto fs = legendre_transform(f, std::vector<double>{0.0, 0.25, 0.5, 1.0, 1.5, 2.0});
  CHECK(fs.value(0) == doctest::Approx(0.0));
  CHECK(std::abs(fs.value(2)) < 1e-12);
  CHECK(std::abs(fs.value(3)) < 1e-12);
  CHECK(fs.value(4) == oracle::inf);
  CHECK(fs.value(5) == oracle::inf);
}

TEST_CASE("conjugate of the n = 3 power-law potential") {
  const auto f = tabulate([](double v) { return 0.75 * std::pow(v, 4.0 / 3.0); }, 20.0, 2048);
  const auto fs = legendre_transform(f, std::vector<double>{0.0, 1.0, 2.0});
  const double scan = oracle::conjugate_scan([](double v) { return 0.75 * std::pow(v, 4.0 / 3.0); },
                                             2.0, 20.0, 100000);
  CHECK(scan == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(fs.value(2) == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("legendre transform input validation") {
  const auto f = tabulate([](double v) { return v * v; }, 1.0, 16);
  CHECK_THROWS_AS(legendre_transform(f, std::vector<double>{}), InvalidInput);
  CHECK_THROWS_AS(legendre_transform(f, std::vector<double>{0.0, 1.0, 0.5}), InvalidInput);
  CHECK_THROWS_AS(legendre_transform(f, std::vector<double>{0.1, 1.0}), InvalidInput);
}

TEST_CASE("sweep and exhaustive transforms agree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng), p = 1.0 + u(rng);
    const auto f = tabulate([&](double v) { return a * v + b * std::pow(v, p); }, 5.0, 2048);
    const auto dual = default_dual_grid(f);
    const auto ex = legendre_transform(f, dual, {TransformMethod::Exhaustive, std::nullopt});
    const auto sw = legendre_transform(f, dual, {TransformMethod::Sweep, std::nullopt});
    CHECK(max_abs_diff_on(ex, sw, ex.finite_sup()) <= 1e-12 * ex.scale());
    CHECK(ex.finite_sup() == sw.finite_sup());
  }
}

TEST_CASE("direct infimal convolution of |v| and v^2/2 gives the Huber function") {
  const auto f = tabulate([](double v) { return v; }, 4.0, 4097);
  const auto g = tabulate([](double v) { return 0.5 * v * v; }, 4.0, 4097);
  const auto h = inf_convolve_direct(f, g);
  CHECK(h(0.5) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(h(2.0) == doctest::Approx(1.5).epsilon(1e-12));
  for (double v : {0.1, 0.7, 1.3, 3.9})
    CHECK(h(v) == doctest::Approx(oracle::huber(1.0, 1.0, v)).epsilon(1e-5));
}

TEST_CASE("indicator of the origin is the identity of infimal convolution") {
  const auto f = tabulate([](double v) { return std::exp(v) - 1.0 - 0.5 * v; }, 2.0, 257);
  std::vector<double> ind(257, oracle::inf);
  ind[0] = 0.0;
  const SampledFunction delta(uniform_grid({2.0, 257}), ind);
  const auto h = inf_convolve_direct(f, delta);
  CHECK(max_abs_diff_on(h, f, f.size()) == 0.0);
}

TEST_CASE("convolution through conjugates") {
  const auto q = tabulate([](double v) { return 0.5 * v * v; }, 4.0, 2049);
  const auto l = tabulate([](double v) { return v; }, 4.0, 2049);
  const double h = 4.0 / 2048.0;

  SUBCASE("Huber values") {
    const auto r = inf_convolve_via_conjugate(l, q);
    CHECK(r(0.5) == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(r(2.0) == doctest::Approx(1.5).epsilon(1e-10));
  }
  SUBCASE("two unit dashpots give the harmonic quarter") {
    const auto r = inf_convolve_via_conjugate(q, q);
    for (double v : {0.5, 1.0, 2.5, 4.0}) CHECK(std::abs(r(v) - 0.25 * v * v) <= h * h);
  }
  SUBCASE("zero function flattens to the minimum") {
    const auto zero = tabulate([](double) { return 0.0; }, 4.0, 2049);
    const auto r = inf_convolve_via_conjugate(q, zero);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(r.value(i)) <= 1e-12);
    const auto d = inf_convolve_direct(q, zero);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.value(i) == 0.0);
  }
}

TEST_CASE("direct and conjugate convolution routes agree") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = u(rng), d1 = u(rng), d2 = u(rng), p = 1.2 + 0.5 * u(rng);
    const auto f = tabulate([&](double v) { return a * v + 0.5 * d1 * v * v; }, 6.0, 1024);
    const auto g = tabulate([&](double v) { return d2 * std::pow(v, p); }, 6.0, 1024);
    const auto direct = inf_convolve_direct(f, g);
    const auto via = inf_convolve_via_conjugate(f, g);
    CHECK(max_abs_diff_on(direct, via, direct.size()) <= 1e-8 * direct.scale());
  }
}

TEST_CASE("direct convolution resamples a finer operand and rejects short ones") {
  const auto f = tabulate([](double v) { return v; }, 4.0, 401);
  const auto g_fine = tabulate([](double v) { return 0.5 * v * v; }, 4.0, 801);
  CHECK(inf_convolve_direct(f, g_fine)(2.0) == doctest::Approx(1.5));
  const auto g_short = tabulate([](double v) { return 0.5 * v * v; }, 2.0, 201);
  CHECK_THROWS_AS(inf_convolve_direct(f, g_short), InvalidInput);
}

TEST_CASE("yosida envelopes") {
  const auto l = tabulate([](double v) { return v; }, 4.0, 4097);
  CHECK(yosida(l, 1.0)(2.0) == doctest::Approx(1.5).epsilon(1e-12));

  const auto q = tabulate([](double v) { return 0.5 * v * v; }, 4.0, 4097);
  const double h = 4.0 / 4096.0;
  for (double eps : {0.5, 1.0, 3.0}) {
    const auto y = yosida(q, eps);
    for (double v : {0.25, 1.0, 3.0}) CHECK(std::abs(y(v) - 0.5 * v * v / (1.0 + eps)) <= h * h);
  }

  const auto c = tabulate([](double) { return 0.0; }, 4.0, 65);
  const auto yc = yosida(c, 2.0);
  for (std::size_t i = 0; i < yc.size(); ++i) CHECK(yc.value(i) == 0.0);

  CHECK_THROWS_AS(yosida(q, 0.0), InvalidInput);
  CHECK_THROWS_AS(yosida(q, -1.0), InvalidInput);
}

TEST_CASE("subdifferentials") {
  const auto l = tabulate([](double v) { return v; }, 4.0, 401);
  CHECK(subdifferential(l, 0.0) == SubdiffInterval{-1.0, 1.0});
  const auto at2 = subdifferential(l, 2.0);
  CHECK(at2.lo == doctest::Approx(1.0));
  CHECK(at2.hi == doctest::Approx(1.0));
  CHECK_THROWS_AS(subdifferential(l, 4.5), OutOfRangeError);
  CHECK_THROWS_AS(subdifferential(l, -0.5), OutOfRangeError);

  // ½σ² on [0, 1], +inf beyond: the normal cone opens at the boundary
  const auto grid = uniform_grid({2.0, 401});
  std::vector<double> vals;
  for (double x : grid) vals.push_back(x <= 1.0 + 1e-12 ? 0.5 * x * x : oracle::inf);
  const SampledFunction qb(grid, vals);
  const auto at1 = subdifferential(qb, 1.0);
  CHECK(at1.lo == doctest::Approx(1.0).epsilon(0.01));
  CHECK(at1.hi == oracle::inf);
  CHECK(subdifferential(qb, 1.5).is_saturated());
}

TEST_CASE("fenchel-young residual") {
  const auto f = tabulate([](double v) { return 0.5 * v * v; }, 4.0, 2049);
  const auto fs = legendre_transform(f, GridSpec{4.0, 2049});
  CHECK(std::abs(fenchel_young_residual(f, fs, 1.0, 1.0)) <= 1e-12);
  CHECK(fenchel_young_residual(f, fs, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-9));

  const auto l = tabulate([](double v) { return v; }, 4.0, 401);
  const auto ls = legendre_transform(l, GridSpec{1.0, 101});
  CHECK(std::abs(fenchel_young_residual(l, ls, 0.0, 0.5)) <= 1e-12);
}

TEST_CASE("fenchel-young inequality over all sampled pairs") {
  const auto f = tabulate([](double v) { return v + std::pow(v, 1.5); }, 3.0, 257);
  const auto fs = legendre_transform(f, default_dual_grid(f, 257));
  const double tol = 1e-10 * std::max(f.scale(), fs.scale());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < fs.finite_sup(); ++j)
      CHECK(fenchel_young_residual(f, fs, f.x(i), fs.x(j)) >= -tol);
  }
}

TEST_CASE("conjugation reverses order") {
  const auto dual = uniform_grid({3.0, 301});
  for (double c : {1.1, 2.0, 5.0}) {
    const auto f = tabulate([](double v) { return 0.5 * v * v; }, 4.0, 401);
    const auto g = tabulate([c](double v) { return 0.5 * c * v * v; }, 4.0, 401);
    const auto fs = legendre_transform(f, dual);
    const auto gs = legendre_transform(g, dual);
    for (std::size_t j = 0; j < dual.size(); ++j) CHECK(fs.value(j) >= gs.value(j));
  }
}

TEST_CASE("biconjugation on the slope-adapted grid") {
  const auto f = tabulate([](double v) { return 0.3 * v + std::pow(v, 2.5); }, 5.0, 2048);
  const auto fs = legendre_transform(f, slope_adapted_grid(f));
  const auto fss = legendre_transform(fs, std::vector<double>(f.grid().begin(), f.grid().end()));
  CHECK(max_abs_diff_on(f, fss, f.size()) <= 1e-8 * f.scale());
}
