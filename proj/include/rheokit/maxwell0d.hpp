#pragma once

// Homogeneous generalized Maxwell rheology: an elastic spring ½ E e_el² in
// series with viscoplastic flow elements, driven by a prescribed strain rate.
//   de_el/dt = ε(t) - Σ_i ζ_i*'(E e_el)

#include <cstddef>
#include <vector>

#include "rheokit/potentials.hpp"
#include "rheokit/rheology.hpp"

namespace rheokit {

struct MaxwellModel {
  double E;
  std::vector<Potential> elements;
};

/// Throws InvalidInput unless E > 0 and the element list is nonempty and valid.
void validate(const MaxwellModel& m);

/// The flow elements in series, without the spring.
RheoExpr flow_expression(const MaxwellModel& m);

struct DriveSegment {
  double t_end;
  double eps;
};

/// Piecewise-constant strain rate; segment i covers (t_end[i-1], t_end[i]].
/// Past the last segment the rate is zero.
struct DriveProgram {
  std::vector<DriveSegment> segments;

  double rate_at(double t) const;
};

/// Throws InvalidInput unless segment end times are positive and strictly increasing.
void validate(const DriveProgram& d);

struct TimeSeriesRow {
  double t;
  double eps;
  double e_el;
  double sigma;
};

struct TimeSeries {
  std::vector<TimeSeriesRow> rows;
};

enum class Scheme { BackwardEuler, ForwardEuler };

/// One step of length dt > 0 at strain rate eps. The backward step bisects the
/// monotone residual and returns onto the yield surface when the trial state
/// lies beyond the smallest stress cap. Throws IntegratorError if bisection
/// does not converge.
double step(const MaxwellModel& m, double e_el, double eps, double dt,
            Scheme scheme = Scheme::BackwardEuler);

/// Integrates from t = 0 to t_end; one row per step plus the initial row. The
/// last step is shortened to land on t_end.
TimeSeries simulate(const MaxwellModel& m, const DriveProgram& drive, double dt, double t_end,
                    double e_el0 = 0.0, Scheme scheme = Scheme::BackwardEuler);

/// Stress after integrating at constant eps from rest until |dσ/dt| < rate_tol.
/// Throws IntegratorError if that takes more than max_steps.
double steady_state_stress(const MaxwellModel& m, double eps, double dt, double rate_tol = 1e-10,
                           std::size_t max_steps = 10'000'000);

}  // namespace rheokit
