#include "rheokit/rheology.hpp"

#include <algorithm>
#include <sstream>

#include "rheokit/error.hpp"

namespace rheokit {

namespace {

enum class Side { Lower, Upper };

double pick(const SubdiffInterval& d, Side side) { return side == Side::Lower ? d.lo : d.hi; }

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) {
    std::ostringstream msg;
    msg << what << " must be non-negative, got " << v;
    throw InvalidInput(msg.str());
  }
}

double stress_bound(const RheoExpr& e, double eps, Side side, const SolverOptions& opts);
double rate_bound(const RheoExpr& e, double sigma, Side side, const SolverOptions& opts);

// lim σ(ε) as ε -> 0+: the yield offset carried at vanishing strain rate.
double yield_offset(const RheoExpr& e) {
  switch (e.kind()) {
    case RheoExpr::Kind::Leaf:
      return dvalue(e.potential(), 0.0).hi;
    case RheoExpr::Kind::Parallel: {
      double s = 0.0;
      for (const auto& c : e.children()) s += yield_offset(c);
      return s;
    }
    case RheoExpr::Kind::Serial:
      return 0.0;
  }
  return 0.0;
}

// inf{σ : rate_hi(σ) >= ε}; single-valued because a strict child exists.
double serial_stress(const RheoExpr& e, double eps, const SolverOptions& opts) {
  const auto root = threshold_search(
      [&](double s) {
        double r = 0.0;
        for (const auto& c : e.children()) r += rate_bound(c, s, Side::Upper, opts);
        return r;
      },
      eps, false, opts.serial_method, opts);
  if (!root) {
    std::ostringstream msg;
    msg << "serial stress solve: no bracket at strain rate " << eps;
    throw NoConvergence(msg.str());
  }
  return *root;
}

// Lower end: inf{ε : stress_hi(ε) >= σ}. Upper end: inf{ε : stress_lo(ε) > σ}.
double parallel_rate(const RheoExpr& e, double sigma, Side side, const SolverOptions& opts) {
  // below the offset the rate set is {0}; saves bisecting down to zero
  if (side == Side::Upper && sigma < yield_offset(e)) return 0.0;
  const Side inner = side == Side::Lower ? Side::Upper : Side::Lower;
  const auto root = threshold_search(
      [&](double r) {
        double s = 0.0;
        for (const auto& c : e.children()) s += stress_bound(c, r, inner, opts);
        return s;
      },
      sigma, side == Side::Upper, opts.parallel_method, opts);
  return root ? *root : kInf;
}

double stress_bound(const RheoExpr& e, double eps, Side side, const SolverOptions& opts) {
  switch (e.kind()) {
    case RheoExpr::Kind::Leaf:
      return pick(dvalue(e.potential(), eps), side);
    case RheoExpr::Kind::Parallel: {
      double s = 0.0;
      for (const auto& c : e.children()) s += stress_bound(c, eps, side, opts);
      return s;
    }
    case RheoExpr::Kind::Serial:
      return serial_stress(e, eps, opts);
  }
  return 0.0;
}

double rate_bound(const RheoExpr& e, double sigma, Side side, const SolverOptions& opts) {
  switch (e.kind()) {
    case RheoExpr::Kind::Leaf:
      return pick(flow_rate(e.potential(), sigma), side);
    case RheoExpr::Kind::Serial: {
      double r = 0.0;
      for (const auto& c : e.children()) r += rate_bound(c, sigma, side, opts);
      return r;
    }
    case RheoExpr::Kind::Parallel:
      return parallel_rate(e, sigma, side, opts);
  }
  return 0.0;
}

SubdiffInterval stress_interval(const RheoExpr& e, double eps, const SolverOptions& opts) {
  switch (e.kind()) {
    case RheoExpr::Kind::Leaf:
      return dvalue(e.potential(), eps);
    case RheoExpr::Kind::Parallel: {
      SubdiffInterval s{0.0, 0.0};
      for (const auto& c : e.children()) s += stress_interval(c, eps, opts);
      return s;
    }
    case RheoExpr::Kind::Serial:
      return SubdiffInterval::point(serial_stress(e, eps, opts));
  }
  return {};
}

SubdiffInterval rate_interval(const RheoExpr& e, double sigma, const SolverOptions& opts) {
  switch (e.kind()) {
    case RheoExpr::Kind::Leaf:
      return flow_rate(e.potential(), sigma);
    case RheoExpr::Kind::Serial: {
      SubdiffInterval r{0.0, 0.0};
      for (const auto& c : e.children()) r += rate_interval(c, sigma, opts);
      return r;
    }
    case RheoExpr::Kind::Parallel: {
      const double lo = parallel_rate(e, sigma, Side::Lower, opts);
      if (lo == kInf) return SubdiffInterval::saturated();
      return {lo, parallel_rate(e, sigma, Side::Upper, opts)};
    }
  }
  return {};
}

}  // namespace

RheoExpr RheoExpr::leaf(Potential p) {
  validate(p);
  RheoExpr e;
  e.kind_ = Kind::Leaf;
  e.strict_ = has_strict_flow(p);
  e.potential_ = std::move(p);
  return e;
}

RheoExpr RheoExpr::parallel(std::vector<RheoExpr> children) {
  if (children.empty()) throw InvalidInput("parallel node needs at least one child");
  RheoExpr e;
  e.kind_ = Kind::Parallel;
  e.strict_ = std::ranges::all_of(children, &RheoExpr::strict_flow);
  e.children_ = std::move(children);
  return e;
}

RheoExpr RheoExpr::serial(std::vector<RheoExpr> children) {
  if (children.empty()) throw InvalidInput("serial node needs at least one child");
  if (!std::ranges::any_of(children, &RheoExpr::strict_flow)) {
    throw InvalidInput(
        "serial node needs a child with strictly increasing, unbounded flow "
        "(dashpot, powerlaw, huber, or a parallel group of those)");
  }
  RheoExpr e;
  e.kind_ = Kind::Serial;
  e.strict_ = true;
  e.children_ = std::move(children);
  return e;
}

const Potential& RheoExpr::potential() const {
  if (!potential_) throw InvalidInput("composite node has no potential");
  return *potential_;
}

SubdiffInterval strain_rate_of_stress(const RheoExpr& e, double sigma, const SolverOptions& opts) {
  require_nonnegative(sigma, "stress");
  return rate_interval(e, sigma, opts);
}

SubdiffInterval stress_of_strain_rate(const RheoExpr& e, double eps, const SolverOptions& opts) {
  require_nonnegative(eps, "strain rate");
  return stress_interval(e, eps, opts);
}

double mu_eff_rigorous(const RheoExpr& e, double eps, bool allow_limit, const SolverOptions& opts) {
  require_nonnegative(eps, "strain rate");
  if (eps == 0.0) {
    if (!allow_limit) throw InvalidInput("effective viscosity at zero strain rate needs the limit flag");
    return zero_rate_viscosity(e);
  }
  return stress_of_strain_rate(e, eps, opts).midpoint() / eps;
}

double zero_rate_viscosity(const RheoExpr& e) {
  switch (e.kind()) {
    case RheoExpr::Kind::Leaf:
      return zero_rate_viscosity(e.potential());
    case RheoExpr::Kind::Parallel: {
      double mu = 0.0;
      for (const auto& c : e.children()) mu += zero_rate_viscosity(c);
      return mu;
    }
    case RheoExpr::Kind::Serial: {
      double inv = 0.0;
      for (const auto& c : e.children()) {
        const double mu = zero_rate_viscosity(c);
        if (mu == 0.0) return 0.0;
        inv += 1.0 / mu;
      }
      return inv == 0.0 ? kInf : 1.0 / inv;
    }
  }
  return 0.0;
}

}  // namespace rheokit
