#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rheokit/error.hpp"
#include "rheokit/formulas.hpp"
#include "rheokit/rheology.hpp"

using namespace rheokit;

namespace {

RheoExpr leaf(Potential p) { return RheoExpr::leaf(std::move(p)); }

double stress(const RheoExpr& e, double eps) { return stress_of_strain_rate(e, eps).midpoint(); }

}  // namespace

TEST_CASE("expression invariants") {
  CHECK_THROWS_AS(RheoExpr::parallel({}), InvalidInput);
  CHECK_THROWS_AS(RheoExpr::serial({}), InvalidInput);
  CHECK_THROWS_AS(RheoExpr::serial({leaf(perfect_plastic(1.0)), leaf(perfect_plastic(2.0))}),
                  InvalidInput);
  // a parallel group of strict elements counts as strict
  CHECK_NOTHROW(RheoExpr::serial(
      {leaf(perfect_plastic(1.0)), RheoExpr::parallel({leaf(dashpot(1.0)), leaf(huber(1.0, 1.0))})}));
  CHECK_THROWS_AS(
      RheoExpr::serial({RheoExpr::parallel({leaf(dashpot(1.0)), leaf(perfect_plastic(1.0))})}),
      InvalidInput);
  CHECK_THROWS_AS(RheoExpr::parallel({leaf(dashpot(1.0))}).potential(), InvalidInput);
}

TEST_CASE("strain rate of stress") {
  const auto two_dashpots = RheoExpr::serial({leaf(dashpot(1.0)), leaf(dashpot(1.0))});
  CHECK(strain_rate_of_stress(two_dashpots, 1.0) == SubdiffInterval::point(2.0));

  const auto creep = RheoExpr::serial({leaf(dashpot(1.0)), leaf(perfect_plastic(1.0))});
  CHECK(strain_rate_of_stress(creep, 0.5).lo == doctest::Approx(0.5));
  CHECK(strain_rate_of_stress(creep, 0.5).is_point());
  CHECK(strain_rate_of_stress(creep, 1.0).hi == oracle::inf);
  CHECK(strain_rate_of_stress(creep, 1.5).is_saturated());

  const auto bingham = RheoExpr::parallel({leaf(dashpot(1.0)), leaf(perfect_plastic(1.0))});
  CHECK(strain_rate_of_stress(bingham, 0.5) == SubdiffInterval::point(0.0));
  CHECK(strain_rate_of_stress(bingham, 3.0).lo == doctest::Approx(2.0));

  for (const auto& e : {two_dashpots, creep, bingham})
    CHECK(strain_rate_of_stress(e, 0.0) == SubdiffInterval::point(0.0));
  CHECK_THROWS_AS(strain_rate_of_stress(creep, -1.0), InvalidInput);
}

TEST_CASE("stress of strain rate") {
  const auto creep = RheoExpr::serial({leaf(dashpot(1.0)), leaf(perfect_plastic(1.0))});
  CHECK(stress(creep, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stress(creep, 0.5) == doctest::Approx(0.5).epsilon(1e-12));

  const auto bingham = RheoExpr::parallel({leaf(dashpot(1.0)), leaf(perfect_plastic(1.0))});
  CHECK(stress(bingham, 2.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(stress_of_strain_rate(bingham, 0.0) == SubdiffInterval{0.0, 1.0});

  const auto dif_dsl = RheoExpr::serial({leaf(dashpot(1.0)), leaf(power_law(1.0, 3.0))});
  const double s = stress(dif_dsl, 2.0);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s * s * s + s == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(stress_of_strain_rate(creep, -0.1), InvalidInput);
}

TEST_CASE("bisection and Illinois serial solves agree") {
  const auto e = RheoExpr::serial(
      {RheoExpr::parallel({leaf(perfect_plastic(1.3)), leaf(dashpot(0.4))}), leaf(power_law(2.0, 2.5)),
       leaf(dashpot(3.0))});
  SolverOptions bis;
  bis.serial_method = RootMethod::Bisection;
  bis.parallel_method = RootMethod::Bisection;
  for (double eps : {1e-4, 0.1, 1.0, 7.0, 300.0}) {
    const double a = stress_of_strain_rate(e, eps).lo;
    const double b = stress_of_strain_rate(e, eps, bis).lo;
    CHECK(std::abs(a - b) <= 1e-12 * a);
  }
}

TEST_CASE("effective viscosity") {
  const auto creep = RheoExpr::serial({leaf(dashpot(1.0)), leaf(perfect_plastic(1.0))});
  CHECK(mu_eff_rigorous(creep, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  const auto bingham = RheoExpr::parallel({leaf(dashpot(1.0)), leaf(perfect_plastic(1.0))});
  CHECK(mu_eff_rigorous(bingham, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  for (double D : {0.3, 2.0}) {
    const auto two = RheoExpr::serial({leaf(dashpot(D)), leaf(dashpot(D))});
    for (double eps : {0.1, 1.0, 50.0})
      CHECK(mu_eff_rigorous(two, eps) == doctest::Approx(D / 2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(mu_eff_rigorous(creep, 0.0), InvalidInput);
  CHECK(mu_eff_rigorous(creep, 0.0, true) == 1.0);
  CHECK(mu_eff_rigorous(bingham, 0.0, true) == oracle::inf);
  CHECK(zero_rate_viscosity(RheoExpr::serial({leaf(dashpot(2.0)), leaf(dashpot(2.0))})) == 1.0);
}

TEST_CASE("serial and parallel solvers invert each other") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto e = RheoExpr::parallel(
        {RheoExpr::serial({leaf(perfect_plastic(u(rng))), leaf(power_law(u(rng), 0.5 + u(rng)))}),
         RheoExpr::serial({leaf(huber(u(rng), u(rng))), leaf(dashpot(u(rng)))}),
         leaf(dashpot(u(rng)))});
    for (double sigma : {0.05, 0.7, 3.0, 40.0}) {
      const auto rate = strain_rate_of_stress(e, sigma);
      // two independent solves bracket the single-valued rate
      REQUIRE(rate.hi - rate.lo <= 1e-13 * rate.lo);
      const double back = stress_of_strain_rate(e, rate.midpoint()).midpoint();
      CHECK(std::abs(back - sigma) <= 1e-10 * sigma);
    }
  }
}

TEST_CASE("three-element closed form and parameter map") {
  CHECK(three_element_stress({1, 1, 1}, 0.5) == doctest::Approx(1.0));
  CHECK(three_element_stress({1, 1, 1}, 2.0) == doctest::Approx(3.0));
  CHECK(three_element_stress({2, 3, 5}, 0.0) == 0.0);
  // continuous at the switch ε = σ_A/D2
  const double sw = 2.0 / 4.0;
  CHECK(three_element_stress({2, 4, 1}, sw) == doctest::Approx(2.0 + 1.0 * sw));
  CHECK(three_element_stress({2, 4, 1}, std::nextafter(sw, 1.0)) == doctest::Approx(2.0 + sw));

  const auto t = map_serial_parallel_params(1, 1, 1);
  CHECK(t.sigma_a_tilde == 2.0);
  CHECK(t.D2_tilde == 2.0);
  CHECK(t.D3_tilde == 2.0);
  const auto t2 = map_serial_parallel_params(2, 4, 1);
  CHECK(t2.sigma_a_tilde == doctest::Approx(2.5));
  CHECK(t2.D2_tilde == doctest::Approx(5.0));
  CHECK(t2.D3_tilde == doctest::Approx(1.25));
  const auto t0 = map_serial_parallel_params(3, 2, 0);
  CHECK(t0.sigma_a_tilde == 3.0);
  CHECK(t0.D2_tilde == 2.0);
  CHECK(t0.D3_tilde == 0.0);
}

TEST_CASE("both three-element models follow the closed form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ThreeElementParams p{u(rng), u(rng), u(rng)};
    const auto ps = parallel_serial_model(p);
    const auto sp = serial_parallel_model(map_serial_parallel_params(p.sigma_a, p.D2, p.D3));
    for (int k = 0; k <= 40; ++k) {
      const double eps = 4.0 * p.sigma_a / p.D2 * k / 40.0;
      const double ref = oracle::three_element(p.sigma_a, p.D2, p.D3, eps);
      CHECK(three_element_stress(p, eps) == doctest::Approx(ref).epsilon(1e-14));
      CHECK(std::abs(stress_of_strain_rate(ps, eps).lo - ref) <= 1e-12 * (1.0 + ref));
      CHECK(std::abs(stress_of_strain_rate(sp, eps).lo - ref) <= 1e-12 * (1.0 + ref));
    }
  }
}

TEST_CASE("shear thinning of dashpot/plastic networks") {
  const auto e = RheoExpr::parallel(
      {RheoExpr::serial({leaf(perfect_plastic(2.0)), leaf(dashpot(3.0))}),
       RheoExpr::serial({leaf(perfect_plastic(0.5)), leaf(dashpot(1.0)),
                         RheoExpr::parallel({leaf(dashpot(2.0)), leaf(perfect_plastic(0.2))})}),
       leaf(dashpot(0.1))});
  double prev = oracle::inf;
  for (int k = 1; k <= 200; ++k) {
    const double mu = mu_eff_rigorous(e, 0.05 * k);
    CHECK(mu <= prev * (1.0 + 1e-12));
    prev = mu;
  }
}

TEST_CASE("closed-form effective viscosities") {
  CHECK(mu_eff_formula(Formula::VpMin, {1.0, 1.0}, 2.0) == doctest::Approx(0.5));
  CHECK(mu_eff_formula(Formula::BinghamSum, {1.0, 1.0}, 1.0) == doctest::Approx(2.0));
  CHECK(mu_eff_formula(Formula::ThreeElement, {1.0, 1.0, 1.0}, 2.0) == doctest::Approx(1.5));
  CHECK(mu_eff_formula(Formula::EmpDifDsl, {1.0, 1.0, oracle::inf}, 1.0) == doctest::Approx(0.5));
  CHECK(mu_eff_formula(Formula::EmpVar1, {1.0, 1.0, 1.0}, 1.0) == doctest::Approx(1.5));
  CHECK(mu_eff_formula(Formula::EmpVar2, {2.0, 2.0, 2.0}, 1.0) == doctest::Approx(4.0 / 3.0));
  CHECK(mu_eff_formula(Formula::HbMin, {1.0, 1.0, 3.0}, 8.0) == doctest::Approx(0.125));
  CHECK(mu_eff_formula(Formula::EmpDifDsl, {1.0, 1.0, 3.0}, 2.0) ==
        doctest::Approx(1.0 / (1.0 + std::pow(2.0, 2.0 / 3.0))));

  FormulaArgs multi;
  multi.scalars = {0.7};
  multi.yield_stresses = {1.3};
  multi.viscosities = {2.1};
  for (double eps : {0.1, 0.6, 5.0}) {
    CHECK(mu_eff_formula(Formula::MultiElement, multi, eps) ==
          mu_eff_formula(Formula::ThreeElement, {1.3, 2.1, 0.7}, eps));
  }
  multi.yield_stresses = {1.0, 2.0};
  multi.viscosities = {1.0, 1.0};
  CHECK(mu_eff_formula(Formula::MultiElement, multi, 1.5) == doctest::Approx(0.7 + 2.0 / 3.0 + 1.0));

  FormulaArgs harmonic;
  harmonic.functions = {[](double) { return 2.0; }, [](double e) { return 1.0 / e; }};
  CHECK(mu_eff_formula(Formula::EmpHarmonicGeneral, harmonic, 2.0) == doctest::Approx(1.0 / 2.5));
}

TEST_CASE("formula arity and domain errors") {
  CHECK_THROWS_AS(mu_eff_formula(Formula::VpMin, {1.0}, 1.0), InvalidInput);
  CHECK_THROWS_AS(mu_eff_formula(Formula::ThreeElement, {1.0, 1.0}, 1.0), InvalidInput);
  CHECK_THROWS_AS(mu_eff_formula(Formula::VpMin, {1.0, 1.0}, 0.0), InvalidInput);
  CHECK_THROWS_AS(mu_eff_formula(Formula::EmpHarmonicGeneral, {}, 1.0), InvalidInput);
  FormulaArgs bad;
  bad.scalars = {1.0};
  bad.yield_stresses = {1.0, 2.0};
  bad.viscosities = {1.0};
  CHECK_THROWS_AS(mu_eff_formula(Formula::MultiElement, bad, 1.0), InvalidInput);
  CHECK(formula_from_name("HB_MIN") == Formula::HbMin);
  CHECK(formula_name(Formula::EmpVar2) == "EMP_VAR2");
  CHECK_THROWS_AS(formula_from_name("NOPE"), InvalidInput);
}

TEST_CASE("empirical variants differ under the rigorous map") {
  const auto t = map_serial_parallel_params(1, 1, 1);
  const double v1 = mu_eff_formula(Formula::EmpVar1, {1, 1, 1}, 1.0);
  const double v2 = mu_eff_formula(Formula::EmpVar2, {t.sigma_a_tilde, t.D2_tilde, t.D3_tilde}, 1.0);
  CHECK(std::abs(v1 - v2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("serial diffusion/dislocation stress") {
  CHECK(serial_dif_dsl_stress(1, 1, 2, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(serial_dif_dsl_stress(1, 1, 3, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(serial_dif_dsl_stress(1, 1, 2, 6.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(serial_dif_dsl_stress(1, 1, 2, 2.0) == doctest::Approx(std::sqrt(2.25) - 0.5));
  CHECK(serial_dif_dsl_stress(2, 3, 1, 5.0) == doctest::Approx(5.0 / (0.5 + 1.0 / 3.0)));
  for (double n : {1.0, 2.0, 3.0}) CHECK(serial_dif_dsl_stress(1, 1, n, 0.0) == 0.0);
  CHECK_THROWS_AS(serial_dif_dsl_stress(1, 1, 2.5, 1.0), UnsupportedMode);
  CHECK(serial_dif_dsl_stress(1, 1, 2.5, 1.0, DifDslMode::Numeric) ==
        doctest::Approx(oracle::dif_dsl_stress(1, 1, 2.5, 1.0)).epsilon(1e-12));
  CHECK(serial_dif_dsl_stress(1, 1, oracle::inf, 3.0, DifDslMode::Numeric) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(serial_dif_dsl_stress(0, 1, 2, 1.0), InvalidInput);
}

TEST_CASE("closed forms match bisection across moduli") {
  for (double D_dif : {0.1, 1.0, 10.0}) {
    for (double D_dsl : {0.1, 1.0, 10.0}) {
      for (double n : {1.0, 2.0, 3.0}) {
        for (int k = 0; k <= 50; ++k) {
          const double eps = 0.2 * k;
          const double closed = serial_dif_dsl_stress(D_dif, D_dsl, n, eps);
          const double ref = oracle::dif_dsl_stress(D_dif, D_dsl, n, eps);
          CHECK(std::abs(closed - ref) <= 1e-9 * ref);
          const double numeric = serial_dif_dsl_stress(D_dif, D_dsl, n, eps, DifDslMode::Numeric);
          CHECK(std::abs(closed - numeric) <= 1e-9 * ref);
        }
      }
    }
  }
}

TEST_CASE("depressed cubic") {
  CHECK(depressed_cubic_root(1.0, 2.0) == doctest::Approx(1.0));
  CHECK(depressed_cubic_root(1.0, -2.0) == doctest::Approx(-1.0));
  CHECK(depressed_cubic_root(0.0, 27.0) == doctest::Approx(3.0));
  CHECK(depressed_cubic_root(5.0, 0.0) == 0.0);
  // textbook two-cube-root form where it is well conditioned
  const double p = 2.0, q = 7.0;
  const double d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  CHECK(depressed_cubic_root(p, q) == doctest::Approx(std::cbrt(q / 2 + d) + std::cbrt(q / 2 - d)));
  CHECK_THROWS_AS(depressed_cubic_root(-1.0, 1.0), InvalidInput);
}

TEST_CASE("harmonic mean of linear viscosities") {
  CHECK(harmonic_mean_linear({2.0, 2.0}) == doctest::Approx(1.0));
  CHECK(harmonic_mean_linear({4.5}) == doctest::Approx(4.5));
  CHECK(harmonic_mean_linear({1.0, 1.0, 1.0}) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(harmonic_mean_linear({}), InvalidInput);
}
