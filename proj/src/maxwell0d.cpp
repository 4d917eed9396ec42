#include "rheokit/maxwell0d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rheokit/error.hpp"

namespace rheokit {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kRelWidth = 4.0 * std::numeric_limits<double>::epsilon();

// Signed total flow rate at stress sigma, lower ends at set-valued points.
double total_flow(const MaxwellModel& m, double sigma) {
  const double s = std::abs(sigma);
  double r = 0.0;
  for (const auto& p : m.elements) r += flow_rate(p, s).lo;
  return std::copysign(r, sigma);
}

double min_cap(const MaxwellModel& m) {
  double cap = kInf;
  for (const auto& p : m.elements) cap = std::min(cap, stress_cap(p));
  return cap;
}

double backward_step(const MaxwellModel& m, double e, double eps, double dt) {
  const double x0 = e + dt * eps;
  if (x0 == 0.0) return 0.0;
  auto g = [&](double x) { return x - x0 + dt * total_flow(m, m.E * x); };

  // work on the trial side; g is odd-symmetric in (x, x0)
  const double sign = x0 > 0.0 ? 1.0 : -1.0;
  double lo = 0.0;
  double hi = std::abs(x0);
  const double e_cap = min_cap(m) / m.E;
  if (hi >= e_cap) {
    if (sign * g(sign * e_cap) <= 0.0) return sign * e_cap;
    hi = e_cap;
  }
  auto resid = [&](double a) { return sign * g(sign * a); };

  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || hi - lo <= kRelWidth * hi) return sign * mid;
    if (resid(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  std::ostringstream msg;
  msg << "backward Euler step did not converge (e_el=" << e << ", eps=" << eps << ", dt=" << dt
      << ")";
  throw IntegratorError(msg.str());
}

double forward_step(const MaxwellModel& m, double e, double eps, double dt) {
  const double next = e + dt * (eps - total_flow(m, m.E * e));
  const double e_cap = min_cap(m) / m.E;
  return std::clamp(next, -e_cap, e_cap);
}

}  // namespace

void validate(const MaxwellModel& m) {
  if (!(m.E > 0.0) || !std::isfinite(m.E)) throw InvalidInput("E must be positive and finite");
  if (m.elements.empty()) throw InvalidInput("maxwell model needs at least one flow element");
  for (const auto& p : m.elements) validate(p);
}

RheoExpr flow_expression(const MaxwellModel& m) {
  std::vector<RheoExpr> leaves;
  leaves.reserve(m.elements.size());
  for (const auto& p : m.elements) leaves.push_back(RheoExpr::leaf(p));
  return RheoExpr::serial(std::move(leaves));
}

double DriveProgram::rate_at(double t) const {
  for (const auto& s : segments) {
    if (t <= s.t_end) return s.eps;
  }
  return 0.0;
}

void validate(const DriveProgram& d) {
  double prev = 0.0;
  for (std::size_t i = 0; i < d.segments.size(); ++i) {
    const auto& s = d.segments[i];
    if (!(s.t_end > prev)) {
      std::ostringstream msg;
      msg << "drive[" << i << "].t_end must exceed " << prev << ", got " << s.t_end;
      throw InvalidInput(msg.str());
    }
    if (!std::isfinite(s.eps)) throw InvalidInput("drive strain rate must be finite");
    prev = s.t_end;
  }
}

double step(const MaxwellModel& m, double e_el, double eps, double dt, Scheme scheme) {
  if (!(dt > 0.0)) throw InvalidInput("time step must be positive");
  return scheme == Scheme::BackwardEuler ? backward_step(m, e_el, eps, dt)
                                         : forward_step(m, e_el, eps, dt);
}

TimeSeries simulate(const MaxwellModel& m, const DriveProgram& drive, double dt, double t_end,
                    double e_el0, Scheme scheme) {
  validate(m);
  validate(drive);
  if (!(dt > 0.0)) throw InvalidInput("time step must be positive");
  if (!(t_end >= dt)) throw InvalidInput("t_end must be at least dt");
  if (!std::isfinite(e_el0)) throw InvalidInput("initial elastic strain must be finite");

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  TimeSeries ts;
  ts.rows.reserve(steps + 1);
  double e = e_el0;
  ts.rows.push_back({0.0, drive.rate_at(0.5 * dt), e, m.E * e});
  double t = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_next = k == steps ? t_end : static_cast<double>(k) * dt;
    const double h = t_next - t;
    const double eps = drive.rate_at(t + 0.5 * h);
    e = step(m, e, eps, h, scheme);
    t = t_next;
    ts.rows.push_back({t, eps, e, m.E * e});
  }
  return ts;
}

double steady_state_stress(const MaxwellModel& m, double eps, double dt, double rate_tol,
                           std::size_t max_steps) {
  validate(m);
  double e = 0.0;
  for (std::size_t k = 0; k < max_steps; ++k) {
    const double next = step(m, e, eps, dt);
    const double rate = m.E * std::abs(next - e) / dt;
    e = next;
    if (rate < rate_tol) return m.E * e;
  }
  throw IntegratorError("steady state not reached within the step budget");
}

}  // namespace rheokit
