#pragma once

// Serial/parallel composition of radial potentials. A Parallel node adds
// potentials (stresses add at a common strain rate); a Serial node
// inf-convolves them (strain rates add at a common stress).

#include <optional>
#include <vector>

#include "rheokit/potentials.hpp"
#include "rheokit/solver1d.hpp"
#include "rheokit/subdiff_interval.hpp"

namespace rheokit {

class RheoExpr {
 public:
  enum class Kind { Leaf, Parallel, Serial };

  static RheoExpr leaf(Potential p);
  /// Throws InvalidInput for an empty child list.
  static RheoExpr parallel(std::vector<RheoExpr> children);
  /// Throws InvalidInput for an empty child list or when no child has a
  /// strictly increasing, unbounded flow rule.
  static RheoExpr serial(std::vector<RheoExpr> children);

  Kind kind() const { return kind_; }
  /// Throws InvalidInput on a composite node.
  const Potential& potential() const;
  const std::vector<RheoExpr>& children() const { return children_; }

  /// Stress is a continuous single-valued function of strain rate on [0, inf).
  bool strict_flow() const { return strict_; }

  friend bool operator==(const RheoExpr&, const RheoExpr&) = default;

 private:
  RheoExpr() = default;

  Kind kind_ = Kind::Leaf;
  std::optional<Potential> potential_;
  std::vector<RheoExpr> children_;
  bool strict_ = false;
};

/// Strain-rate set at stress magnitude sigma >= 0; [inf, inf] past a yield cap.
SubdiffInterval strain_rate_of_stress(const RheoExpr& e, double sigma,
                                      const SolverOptions& opts = {});

/// Stress set at strain-rate magnitude eps >= 0. Throws NoConvergence when a
/// serial bracket cannot be closed.
SubdiffInterval stress_of_strain_rate(const RheoExpr& e, double eps,
                                      const SolverOptions& opts = {});

/// σ/ε at eps > 0 (interval midpoint). At eps = 0 the continuous limit is
/// returned when `allow_limit` is set (+inf for a yield offset), otherwise
/// InvalidInput is thrown.
double mu_eff_rigorous(const RheoExpr& e, double eps, bool allow_limit = false,
                       const SolverOptions& opts = {});

/// Limit of σ(ε)/ε as ε -> 0+, from the tree structure.
double zero_rate_viscosity(const RheoExpr& e);

}  // namespace rheokit
