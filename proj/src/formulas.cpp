#include "rheokit/formulas.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "rheokit/error.hpp"

namespace rheokit {

namespace {

constexpr std::array<std::pair<std::string_view, Formula>, 9> kNames{{
    {"VP_MIN", Formula::VpMin},
    {"BINGHAM_SUM", Formula::BinghamSum},
    {"THREE_ELEMENT", Formula::ThreeElement},
    {"MULTI_ELEMENT", Formula::MultiElement},
    {"EMP_VAR1", Formula::EmpVar1},
    {"EMP_VAR2", Formula::EmpVar2},
    {"HB_MIN", Formula::HbMin},
    {"EMP_DIF_DSL", Formula::EmpDifDsl},
    {"EMP_HARMONIC_GENERAL", Formula::EmpHarmonicGeneral},
}};

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    std::ostringstream msg;
    msg << what << " must be positive, got " << v;
    throw InvalidInput(msg.str());
  }
}

void require_arity(Formula f, const FormulaArgs& a, std::size_t scalars, bool lists,
                   bool functions) {
  const bool ok = a.scalars.size() == scalars &&
                  (lists ? !a.yield_stresses.empty() &&
                               a.yield_stresses.size() == a.viscosities.size()
                         : a.yield_stresses.empty() && a.viscosities.empty()) &&
                  (functions ? !a.functions.empty() : a.functions.empty());
  if (!ok) {
    std::ostringstream msg;
    msg << formula_name(f) << ": expected " << scalars << " scalar(s)"
        << (lists ? " and equal-length nonempty element lists" : "")
        << (functions ? " and a nonempty function list" : "") << ", got "
        << a.scalars.size() << " scalar(s), " << a.yield_stresses.size() << "/"
        << a.viscosities.size() << " list entries, " << a.functions.size() << " function(s)";
    throw InvalidInput(msg.str());
  }
}

// ε^(1 - 1/n), with n = inf giving ε.
double rate_power(double eps, double n) { return std::pow(eps, 1.0 - 1.0 / n); }

}  // namespace

double three_element_stress(const ThreeElementParams& p, double eps) {
  if (!(eps >= 0.0)) throw InvalidInput("strain rate must be non-negative");
  if (eps <= p.sigma_a / p.D2) return (p.D2 + p.D3) * eps;
  return p.sigma_a + p.D3 * eps;
}

SerialParallelParams map_serial_parallel_params(double sigma_a, double D2, double D3) {
  require_positive(sigma_a, "sigma_a");
  require_positive(D2, "D2");
  if (!(D3 >= 0.0)) throw InvalidInput("D3 must be non-negative");
  const double r = D3 / D2;
  return {sigma_a * (1.0 + r), D2 + D3, D3 * (1.0 + r)};
}

RheoExpr parallel_serial_model(const ThreeElementParams& p) {
  return RheoExpr::parallel({
      RheoExpr::serial({RheoExpr::leaf(perfect_plastic(p.sigma_a)), RheoExpr::leaf(dashpot(p.D2))}),
      RheoExpr::leaf(dashpot(p.D3)),
  });
}

RheoExpr serial_parallel_model(const SerialParallelParams& p) {
  return RheoExpr::serial({
      RheoExpr::parallel(
          {RheoExpr::leaf(perfect_plastic(p.sigma_a_tilde)), RheoExpr::leaf(dashpot(p.D3_tilde))}),
      RheoExpr::leaf(dashpot(p.D2_tilde)),
  });
}

Formula formula_from_name(std::string_view name) {
  for (const auto& [n, f] : kNames) {
    if (n == name) return f;
  }
  throw InvalidInput("unknown formula: " + std::string(name));
}

std::string_view formula_name(Formula f) {
  for (const auto& [n, g] : kNames) {
    if (g == f) return n;
  }
  return "?";
}

double mu_eff_formula(Formula f, const FormulaArgs& a, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("effective viscosity formulas need eps > 0");
  const auto& s = a.scalars;
  switch (f) {
    case Formula::VpMin:
      require_arity(f, a, 2, false, false);
      return std::min(s[1], s[0] / eps);
    case Formula::BinghamSum:
      require_arity(f, a, 2, false, false);
      return s[1] + s[0] / eps;
    case Formula::ThreeElement:
      require_arity(f, a, 3, false, false);
      return std::min(s[0] / eps, s[1]) + s[2];
    case Formula::MultiElement: {
      require_arity(f, a, 1, true, false);
      double mu = s[0];
      for (std::size_t i = 0; i < a.yield_stresses.size(); ++i)
        mu += std::min(a.yield_stresses[i] / eps, a.viscosities[i]);
      return mu;
    }
    case Formula::EmpVar1:
      require_arity(f, a, 3, false, false);
      return 1.0 / (eps / s[0] + 1.0 / s[1]) + s[2];
    case Formula::EmpVar2:
      require_arity(f, a, 3, false, false);
      return 1.0 / (1.0 / (s[0] / eps + s[2]) + 1.0 / s[1]);
    case Formula::HbMin:
      require_arity(f, a, 3, false, false);
      return std::min(s[0] / eps, s[1] / rate_power(eps, s[2]));
    case Formula::EmpDifDsl:
      require_arity(f, a, 3, false, false);
      return 1.0 / (1.0 / s[0] + rate_power(eps, s[2]) / s[1]);
    case Formula::EmpHarmonicGeneral: {
      require_arity(f, a, 0, false, true);
      double inv = 0.0;
      for (const auto& mu : a.functions) inv += 1.0 / mu(eps);
      return 1.0 / inv;
    }
  }
  throw InvalidInput("unknown formula");
}

double mu_eff_formula(Formula f, std::initializer_list<double> scalars, double eps) {
  FormulaArgs a;
  a.scalars = scalars;
  return mu_eff_formula(f, a, eps);
}

double depressed_cubic_root(double p, double q) {
  if (!(p >= 0.0)) throw InvalidInput("depressed cubic: p must be non-negative");
  if (q == 0.0) return 0.0;
  // x = w - p/(3w) with w = cbrt(q/2 + sqrt(q²/4 + p³/27)); multiplying by
  // the conjugate factor avoids the cancellation of the two cube roots.
  const double aq = std::abs(q);
  const double w = std::cbrt(0.5 * aq + std::sqrt(0.25 * aq * aq + p * p * p / 27.0));
  const double t = p / (3.0 * w);
  const double x = aq / (w * w + p / 3.0 + t * t);
  return std::copysign(x, q);
}

double serial_dif_dsl_stress(double D_dif, double D_dsl, double n, double eps, DifDslMode mode) {
  require_positive(D_dif, "D_dif");
  require_positive(D_dsl, "D_dsl");
  require_positive(n, "n");
  if (!(eps >= 0.0)) throw InvalidInput("strain rate must be non-negative");
  if (mode == DifDslMode::Closed && n != 1.0 && n != 2.0 && n != 3.0) {
    std::ostringstream msg;
    msg << "closed form available for n in {1, 2, 3} only, got n = " << n;
    throw UnsupportedMode(msg.str());
  }
  if (eps == 0.0) return 0.0;

  if (mode == DifDslMode::Numeric) {
    const auto root = threshold_search(
        [&](double s) { return std::pow(s / D_dsl, n) + s / D_dif; }, eps, false,
        RootMethod::Bisection);
    if (!root) throw NoConvergence("dif-dsl stress: no bracket");
    return *root;
  }
  if (n == 1.0) return eps / (1.0 / D_dif + 1.0 / D_dsl);
  if (n == 2.0) {
    // σ² + bσ - c = 0, positive root in rationalized form
    const double b = D_dsl * D_dsl / D_dif;
    const double c = eps * D_dsl * D_dsl;
    return c / (std::sqrt(0.25 * b * b + c) + 0.5 * b);
  }
  const double d3 = D_dsl * D_dsl * D_dsl;
  return depressed_cubic_root(d3 / D_dif, eps * d3);
}

double harmonic_mean_linear(const std::vector<double>& D) {
  if (D.empty()) throw InvalidInput("harmonic mean of an empty list");
  double inv = 0.0;
  for (double d : D) {
    require_positive(d, "viscosity");
    inv += 1.0 / d;
  }
  return 1.0 / inv;
}

}  // namespace rheokit
