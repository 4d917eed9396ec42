#include "rheokit/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rheokit/convex_core.hpp"
#include "rheokit/error.hpp"

namespace rheokit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kBoundaryTol = 1e-12;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << what << " must be positive and finite, got " << v;
    throw InvalidInput(msg.str());
  }
}

void require_nonnegative(double r, const char* what) {
  if (!(r >= 0.0)) {
    std::ostringstream msg;
    msg << what << " must be non-negative, got " << r;
    throw InvalidInput(msg.str());
  }
}

// Magnitude-interval derivative of a function whose domain ends at `end`,
// with single-valued derivative `slope` inside.
SubdiffInterval bounded_derivative(double r, double end, double slope_inside) {
  if (r < end) return SubdiffInterval::point(slope_inside);
  if (r == end) return {slope_inside, kInf};
  return SubdiffInterval::saturated();
}

double domain_end(const Potential& p) {
  return std::visit(overloaded{
                        [](const QuadPlusBall& q) { return q.sigma_a; },
                        [](const BallIndicator& b) { return b.radius; },
                        [](const Sampled& s) {
                          const auto& f = s.function();
                          return f.bounded_domain() ? f.domain_end() : f.grid().back();
                        },
                        [](const auto&) { return kInf; },
                    },
                    p);
}

}  // namespace

Sampled::Sampled(SampledFunction f)
    : f_(f.normalized()),
      conj_(std::make_shared<const SampledFunction>(
          legendre_transform(f_, default_dual_grid(f_, std::max<std::size_t>(2, f_.size()))))) {}

void validate(const Potential& p) {
  std::visit(overloaded{
                 [](const Dashpot& d) { require_positive(d.D, "dashpot D"); },
                 [](const PerfectPlastic& pp) { require_positive(pp.sigma_a, "plastic sigma_a"); },
                 [](const PowerLaw& pl) {
                   require_positive(pl.D, "power-law D");
                   require_positive(pl.n, "power-law n");
                 },
                 [](const Huber& h) {
                   require_positive(h.sigma_a, "huber sigma_a");
                   require_positive(h.D, "huber D");
                 },
                 [](const QuadPlusBall& q) {
                   require_positive(q.Dinv_quad, "quad+ball Dinv");
                   require_positive(q.sigma_a, "quad+ball sigma_a");
                 },
                 [](const BallIndicator& b) { require_positive(b.radius, "ball radius"); },
                 [](const Sampled&) {},
             },
             p);
}

Potential dashpot(double D) {
  Potential p = Dashpot{D};
  validate(p);
  return p;
}
Potential perfect_plastic(double sigma_a) {
  Potential p = PerfectPlastic{sigma_a};
  validate(p);
  return p;
}
Potential power_law(double D, double n) {
  Potential p = PowerLaw{D, n};
  validate(p);
  return p;
}
Potential huber(double sigma_a, double D) {
  Potential p = Huber{sigma_a, D};
  validate(p);
  return p;
}
Potential quad_plus_ball(double Dinv_quad, double sigma_a) {
  Potential p = QuadPlusBall{Dinv_quad, sigma_a};
  validate(p);
  return p;
}
Potential ball_indicator(double radius) {
  Potential p = BallIndicator{radius};
  validate(p);
  return p;
}
Potential sampled(SampledFunction f) { return Sampled(std::move(f)); }

double value(const Potential& p, double r) {
  require_nonnegative(r, "potential argument");
  return std::visit(
      overloaded{
          [r](const Dashpot& d) { return 0.5 * d.D * r * r; },
          [r](const PerfectPlastic& pp) { return pp.sigma_a * r; },
          [r](const PowerLaw& pl) {
            return pl.n / (pl.n + 1.0) * pl.D * std::pow(r, 1.0 + 1.0 / pl.n);
          },
          [r](const Huber& h) {
            if (r <= h.sigma_a / h.D) return 0.5 * h.D * r * r;
            return h.sigma_a * r - 0.5 * h.sigma_a * h.sigma_a / h.D;
          },
          [r](const QuadPlusBall& q) {
            return r <= q.sigma_a ? 0.5 * q.Dinv_quad * r * r : kInf;
          },
          [r](const BallIndicator& b) { return r <= b.radius ? 0.0 : kInf; },
          [r](const Sampled& s) {
            const auto& f = s.function();
            return r > f.grid().back() ? kInf : f(r);
          },
      },
      p);
}

SubdiffInterval dvalue(const Potential& p, double r) {
  require_nonnegative(r, "potential argument");
  return std::visit(
      overloaded{
          [r](const Dashpot& d) { return SubdiffInterval::point(d.D * r); },
          [r](const PerfectPlastic& pp) {
            return r == 0.0 ? SubdiffInterval{0.0, pp.sigma_a}
                            : SubdiffInterval::point(pp.sigma_a);
          },
          [r](const PowerLaw& pl) { return SubdiffInterval::point(pl.D * std::pow(r, 1.0 / pl.n)); },
          [r](const Huber& h) { return SubdiffInterval::point(std::min(h.D * r, h.sigma_a)); },
          [r](const QuadPlusBall& q) {
            return bounded_derivative(r, q.sigma_a, q.Dinv_quad * std::min(r, q.sigma_a));
          },
          [r](const BallIndicator& b) { return bounded_derivative(r, b.radius, 0.0); },
          [r](const Sampled& s) {
            const auto& f = s.function();
            if (r > f.grid().back()) return SubdiffInterval::saturated();
            SubdiffInterval d = subdifferential(f, r);
            if (r == 0.0) d.lo = 0.0;
            return d;
          },
      },
      p);
}

Potential conjugate_analytic(const Potential& p) {
  return std::visit(
      overloaded{
          [](const Dashpot& d) -> Potential { return Dashpot{1.0 / d.D}; },
          [](const PerfectPlastic& pp) -> Potential { return BallIndicator{pp.sigma_a}; },
          [](const PowerLaw& pl) -> Potential {
            return PowerLaw{std::pow(pl.D, -pl.n), 1.0 / pl.n};
          },
          [](const Huber& h) -> Potential { return QuadPlusBall{1.0 / h.D, h.sigma_a}; },
          [](const QuadPlusBall& q) -> Potential { return Huber{q.sigma_a, 1.0 / q.Dinv_quad}; },
          [](const BallIndicator& b) -> Potential { return PerfectPlastic{b.radius}; },
          [](const Sampled& s) -> Potential { return Sampled(s.conjugate()); },
      },
      p);
}

SubdiffInterval flow_rate(const Potential& p, double s) {
  if (const auto* sp = std::get_if<Sampled>(&p)) {
    require_nonnegative(s, "stress");
    const auto& fs = sp->conjugate();
    if (s > fs.grid().back()) return SubdiffInterval::saturated();
    SubdiffInterval d = subdifferential(fs, s);
    if (s == 0.0) d.lo = 0.0;
    return d;
  }
  return dvalue(conjugate_analytic(p), s);
}

double stress_cap(const Potential& p) {
  return std::visit(overloaded{
                        [](const PerfectPlastic& pp) { return pp.sigma_a; },
                        [](const Huber& h) { return h.sigma_a; },
                        [](const Sampled& s) {
                          const auto& fs = s.conjugate();
                          return fs.bounded_domain() ? fs.domain_end() : kInf;
                        },
                        [](const auto&) { return kInf; },
                    },
                    p);
}

bool has_strict_flow(const Potential& p) {
  return std::holds_alternative<Dashpot>(p) || std::holds_alternative<PowerLaw>(p) ||
         std::holds_alternative<Huber>(p);
}

double zero_rate_viscosity(const Potential& p) {
  return std::visit(overloaded{
                        [](const Dashpot& d) { return d.D; },
                        [](const PerfectPlastic&) { return kInf; },
                        [](const PowerLaw& pl) {
                          if (pl.n > 1.0) return kInf;
                          return pl.n == 1.0 ? pl.D : 0.0;
                        },
                        [](const Huber& h) { return h.D; },
                        [](const QuadPlusBall& q) { return q.Dinv_quad; },
                        [](const BallIndicator&) { return 0.0; },
                        [](const Sampled& s) {
                          const auto& f = s.function();
                          if (f.finite_sup() < 2) return 0.0;
                          return f.chord_slope(0) > 0.0 ? kInf : 0.0;
                        },
                    },
                    p);
}

SampledFunction sample(const Potential& p, std::span<const double> grid) {
  const double end = domain_end(p);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double r = grid[i];
    // nodes within rounding of a bounded domain's end belong to it
    if (r > end && r <= end * (1.0 + kBoundaryTol)) r = end;
    values[i] = value(p, r);
  }
  return SampledFunction(std::vector<double>(grid.begin(), grid.end()), std::move(values));
}

double overstress_flow(double D, double n_exp, double sigma_a, double sigma) {
  require_positive(D, "flow modulus D");
  require_positive(n_exp, "flow exponent n");
  require_nonnegative(sigma_a, "activation stress");
  require_nonnegative(sigma, "stress");
  if (sigma <= sigma_a) return 0.0;
  return std::pow(sigma - sigma_a, n_exp) / D;
}

LimitValue papanastasiou_stress(double sigma_a, double c, double n_exp, double eps) {
  require_nonnegative(sigma_a, "activation stress");
  require_nonnegative(c, "regularization c");
  require_positive(n_exp, "exponent n");
  require_nonnegative(eps, "strain rate");
  if (eps == 0.0) return {sigma_a, true};
  return {sigma_a * std::pow(1.0 + c * std::pow(eps, n_exp), 1.0 / n_exp), false};
}

LimitValue casson_stress(double sigma_a, double c, double eps) {
  require_nonnegative(sigma_a, "activation stress");
  require_nonnegative(c, "regularization c");
  require_nonnegative(eps, "strain rate");
  if (eps == 0.0) return {sigma_a, true};
  return {sigma_a * std::sqrt(1.0 + c * eps), false};
}

}  // namespace rheokit
