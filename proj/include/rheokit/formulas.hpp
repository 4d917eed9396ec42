#pragma once

// Closed-form and empirical effective-viscosity laws, and the three-element
// models they summarize.

#include <functional>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "rheokit/rheology.hpp"

namespace rheokit {

struct ThreeElementParams {
  double sigma_a;
  double D2;
  double D3;
};

/// Serial-parallel counterparts (σ̃_A, D̃2, D̃3).
struct SerialParallelParams {
  double sigma_a_tilde;
  double D2_tilde;
  double D3_tilde;
};

/// (D2+D3) ε below ε = σ_A/D2, σ_A + D3 ε above.
double three_element_stress(const ThreeElementParams& p, double eps);

/// σ̃_A = σ_A(1 + D3/D2), D̃2 = D2 + D3, D̃3 = D3(1 + D3/D2). D3 may be 0.
SerialParallelParams map_serial_parallel_params(double sigma_a, double D2, double D3);

/// Parallel[Serial[plastic σ_A, dashpot D2], dashpot D3].
RheoExpr parallel_serial_model(const ThreeElementParams& p);

/// Serial[Parallel[plastic σ̃_A, dashpot D̃3], dashpot D̃2].
RheoExpr serial_parallel_model(const SerialParallelParams& p);

enum class Formula {
  VpMin,               ///< min(D, σ_A/ε); scalars {σ_A, D}
  BinghamSum,          ///< D + σ_A/ε; scalars {σ_A, D}
  ThreeElement,        ///< min(σ_A/ε, D2) + D3; scalars {σ_A, D2, D3}
  MultiElement,        ///< Σ min(σ_A,i/ε, D2,i) + D3; scalars {D3}, lists
  EmpVar1,             ///< (ε/σ_A + 1/D2)⁻¹ + D3; scalars {σ_A, D2, D3}
  EmpVar2,             ///< (1/(σ̃_A/ε + D̃3) + 1/D̃2)⁻¹; scalars {σ̃_A, D̃2, D̃3}
  HbMin,               ///< min(σ_A/ε, D/ε^(1-1/n)); scalars {σ_A, D, n}
  EmpDifDsl,           ///< (1/D_dif + ε^(1-1/n)/D_dsl)⁻¹; scalars {D_dif, D_dsl, n}
  EmpHarmonicGeneral,  ///< (Σ 1/μ_i(ε))⁻¹; functions only
};

/// Parses the upper-case identifiers VP_MIN, BINGHAM_SUM, ... .
Formula formula_from_name(std::string_view name);
std::string_view formula_name(Formula f);

struct FormulaArgs {
  std::vector<double> scalars;
  std::vector<double> yield_stresses;  ///< MultiElement σ_A,i
  std::vector<double> viscosities;     ///< MultiElement D2,i
  std::vector<std::function<double(double)>> functions;  ///< EmpHarmonicGeneral μ_i(ε)
};

/// Evaluates the formula at eps > 0. n may be +inf. Arity mismatch or
/// non-positive eps throws InvalidInput.
double mu_eff_formula(Formula f, const FormulaArgs& args, double eps);
double mu_eff_formula(Formula f, std::initializer_list<double> scalars, double eps);

enum class DifDslMode { Closed, Numeric };

/// Stress of Serial[Dashpot{D_dif}, PowerLaw{D_dsl, n}] at strain rate eps,
/// the root of (σ/D_dsl)^n + σ/D_dif = ε. Closed mode supports n ∈ {1, 2, 3}
/// and throws UnsupportedMode otherwise; numeric mode bisects for any n > 0,
/// including +inf.
double serial_dif_dsl_stress(double D_dif, double D_dsl, double n, double eps,
                             DifDslMode mode = DifDslMode::Closed);

/// Real root of x³ + p x = q for p >= 0, in a cancellation-free Cardano form.
double depressed_cubic_root(double p, double q);

/// (Σ 1/D_i)⁻¹.
double harmonic_mean_linear(const std::vector<double>& D);

}  // namespace rheokit
