#pragma once

// Catalog of radial convex dissipation potentials ζ(r), r = |strain rate|,
// with their closed-form conjugates ζ*(s), s = |stress|. Every stress law is
// stated on magnitudes; the vector form σ = μ_eff(|ε|) ε is left to callers.

#include <memory>
#include <variant>

#include "rheokit/sampled_function.hpp"
#include "rheokit/subdiff_interval.hpp"

namespace rheokit {

/// Linear viscosity: ½ D r².
struct Dashpot {
  double D;
  friend bool operator==(const Dashpot&, const Dashpot&) = default;
};

/// Perfect plasticity: σ_A r.
struct PerfectPlastic {
  double sigma_a;
  friend bool operator==(const PerfectPlastic&, const PerfectPlastic&) = default;
};

/// Norton-Hoff creep: n/(n+1) D r^(1+1/n), stress D r^(1/n).
struct PowerLaw {
  double D;
  double n;
  friend bool operator==(const PowerLaw&, const PowerLaw&) = default;
};

/// Serial plastic + linear viscous element: ½ D r² up to r = σ_A/D, then
/// σ_A r - ½ σ_A²/D.
struct Huber {
  double sigma_a;
  double D;
  friend bool operator==(const Huber&, const Huber&) = default;
};

/// ½ k r² on [0, σ_A], +inf beyond; the conjugate of Huber{σ_A, 1/k}.
struct QuadPlusBall {
  double Dinv_quad;
  double sigma_a;
  friend bool operator==(const QuadPlusBall&, const QuadPlusBall&) = default;
};

/// Indicator of [0, radius]; the conjugate of PerfectPlastic{radius}.
struct BallIndicator {
  double radius;
  friend bool operator==(const BallIndicator&, const BallIndicator&) = default;
};

/// Grid-sampled potential. The conjugate is computed once on construction
/// (default dual grid) and shared between copies.
class Sampled {
 public:
  explicit Sampled(SampledFunction f);

  const SampledFunction& function() const { return f_; }
  const SampledFunction& conjugate() const { return *conj_; }

  friend bool operator==(const Sampled& a, const Sampled& b) { return a.f_ == b.f_; }

 private:
  SampledFunction f_;
  std::shared_ptr<const SampledFunction> conj_;
};

using Potential =
    std::variant<Dashpot, PerfectPlastic, PowerLaw, Huber, QuadPlusBall, BallIndicator, Sampled>;

/// Throws InvalidInput unless every modulus is strictly positive (n > 0).
void validate(const Potential& p);

/// Factories that validate their moduli.
Potential dashpot(double D);
Potential perfect_plastic(double sigma_a);
Potential power_law(double D, double n);
Potential huber(double sigma_a, double D);
Potential quad_plus_ball(double Dinv_quad, double sigma_a);
Potential ball_indicator(double radius);
Potential sampled(SampledFunction f);

/// ζ(r); +inf past the effective domain. Throws InvalidInput for r < 0.
double value(const Potential& p, double r);

/// ∂ζ(r) as a magnitude interval. At r = 0 a plastic element gives [0, σ_A];
/// at the end of a bounded domain the upper end is +inf; past it, saturated.
SubdiffInterval dvalue(const Potential& p, double r);

/// Closed-form conjugate within the catalog:
///   Dashpot{D}        -> Dashpot{1/D}
///   PerfectPlastic{a} -> BallIndicator{a}
///   PowerLaw{D, n}    -> PowerLaw{D^-n, 1/n}   (σ^(1+n) / ((1+n) D^n))
///   Huber{a, D}       -> QuadPlusBall{1/D, a}
/// and back. Sampled falls back to the numeric transform.
Potential conjugate_analytic(const Potential& p);

/// Strain rate of the element under stress magnitude s: ∂ζ*(s).
SubdiffInterval flow_rate(const Potential& p, double s);

/// Largest stress the element carries (its conjugate's domain end); +inf if unbounded.
double stress_cap(const Potential& p);

/// Whether ∂ζ* is strictly increasing and unbounded, i.e. the element's stress
/// is a continuous single-valued function of strain rate on [0, inf).
bool has_strict_flow(const Potential& p);

/// Viscosity limit σ(r)/r as r -> 0+ (+inf for a yield offset or n > 1 power law).
double zero_rate_viscosity(const Potential& p);

/// Samples ζ on `grid` (+inf past the effective domain).
SampledFunction sample(const Potential& p, std::span<const double> grid);

/// Overstress flow rule: 0 for σ <= σ_A, D^-1 (σ - σ_A)^n above.
double overstress_flow(double D, double n_exp, double sigma_a, double sigma);

/// A value of a regularized law together with whether it was taken as the
/// continuous limit at zero strain rate.
struct LimitValue {
  double value;
  bool is_limit;
};

/// σ_A (1 + c ε^n)^(1/n).
LimitValue papanastasiou_stress(double sigma_a, double c, double n_exp, double eps);

/// σ_A (1 + c ε)^(1/2).
LimitValue casson_stress(double sigma_a, double c, double eps);

}  // namespace rheokit
