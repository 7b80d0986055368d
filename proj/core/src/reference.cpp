#include "mdi/reference.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "mdi/errors.hpp"

namespace mdi {
namespace {

// Lower end a of a one-dimensional half-line {x : n x >= b}.
double half_line_start(const Shape& shape) {
  const auto* h = std::get_if<HalfSpace>(&shape);
  if (h == nullptr || h->normal.size() != 1 || !(h->normal(0) > 0.0)) {
    throw PreconditionError("running-max oracle: every piece must be a half-line [a, inf)");
  }
  return h->offset / h->normal(0);
}

Point running_max(const ProblemSpec& problem, double t, bool left) {
  const auto& set = std::get<MovingConvexSet>(problem.family().data());
  double u = problem.initial_state()(0);
  for (std::size_t k = 0; k < set.starts.size(); ++k) {
    const bool active = left ? set.starts[k] < t || set.starts[k] == 0.0 : set.starts[k] <= t;
    if (active) u = std::max(u, half_line_start(set.shapes[k]));
  }
  return Point::Constant(1, u);
}

Point linear_exponential(const ProblemSpec& problem, double t, bool left) {
  const auto& lin = std::get<TimeVaryingLinear>(problem.family().data());
  const Matrix& q = lin.matrices.front();
  const RhoSpec& rho = problem.rho();
  const Eigen::Index d = q.rows();
  const Matrix flow = (-q * rho.atom_free_nu(0.0, t)).exp();
  Point u = flow * problem.initial_state();
  for (const Atom& a : rho.atoms()) {
    if (a.time < t || (a.time == t && !left)) {
      u = (Matrix::Identity(d, d) + a.mass * q).partialPivLu().solve(u);
    }
  }
  return u;
}

}  // namespace

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::Static:
      return "static";
    case OracleKind::RunningMax:
      return "running_max";
    case OracleKind::LinearExponential:
      return "linear_exponential";
  }
  return "?";
}

std::optional<OracleKind> oracle_from_string(const std::string& name) {
  for (OracleKind k : {OracleKind::Static, OracleKind::RunningMax, OracleKind::LinearExponential}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void require_oracle_applies(OracleKind kind, const ProblemSpec& problem) {
  if (!problem.perturbation().is_zero()) {
    throw PreconditionError(to_string(kind) + " oracle: requires f = 0");
  }
  const OperatorFamily& family = problem.family();
  switch (kind) {
    case OracleKind::Static:
      for (double s : family.piece_starts()) {
        if (s > problem.horizon()) continue;
        if (family.domain_distance(s, problem.initial_state()) > kDomainTolerance ||
            family.minimal_section(s, problem.initial_state()).norm() > 0.0) {
          throw PreconditionError("static oracle: u0 is not an equilibrium of every piece");
        }
      }
      return;
    case OracleKind::RunningMax: {
      const auto* set = std::get_if<MovingConvexSet>(&family.data());
      if (set == nullptr || family.dimension() != 1) {
        throw PreconditionError("running-max oracle: requires a moving half-line in R^1");
      }
      for (const Shape& s : set->shapes) half_line_start(s);
      return;
    }
    case OracleKind::LinearExponential: {
      const auto* lin = std::get_if<TimeVaryingLinear>(&family.data());
      if (lin == nullptr || lin->matrices.size() != 1) {
        throw PreconditionError("linear-exponential oracle: requires a single linear piece");
      }
      return;
    }
  }
}

Point reference_solution(OracleKind kind, const ProblemSpec& problem, double t) {
  if (!(t >= 0.0 && t <= problem.horizon())) throw DomainError("reference: time outside [0,T]");
  require_oracle_applies(kind, problem);
  switch (kind) {
    case OracleKind::Static:
      return problem.initial_state();
    case OracleKind::RunningMax:
      return running_max(problem, t, false);
    case OracleKind::LinearExponential:
      return linear_exponential(problem, t, false);
  }
  return problem.initial_state();
}

Point reference_left_limit(OracleKind kind, const ProblemSpec& problem, double t) {
  if (!(t > 0.0 && t <= problem.horizon())) throw DomainError("reference: left limit needs t in (0,T]");
  require_oracle_applies(kind, problem);
  switch (kind) {
    case OracleKind::Static:
      return problem.initial_state();
    case OracleKind::RunningMax:
      return running_max(problem, t, true);
    case OracleKind::LinearExponential:
      return linear_exponential(problem, t, true);
  }
  return problem.initial_state();
}

}  // namespace mdi
