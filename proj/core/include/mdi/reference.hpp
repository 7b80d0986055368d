#pragma once

#include <optional>
#include <string>

#include "mdi/problem.hpp"

namespace mdi {

// Closed-form solutions for the problem classes that have one.
enum class OracleKind {
  // u(t) = u0; requires f = 0 and 0 in A(t)u0 at every piece.
  Static,
  // C(t) = [a(t), inf) in R^1, f = 0: u(t) = max(u0, max_{s <= t} a(s)).
  RunningMax,
  // One linear piece Q, f = 0:
  //   u(t) = exp(-Q (t + int_0^t r)) prod_{t_k <= t} (I + delta_k Q)^{-1} u0.
  LinearExponential,
};

std::string to_string(OracleKind kind);
std::optional<OracleKind> oracle_from_string(const std::string& name);

// Throws PreconditionError when the problem is outside the oracle's class.
void require_oracle_applies(OracleKind kind, const ProblemSpec& problem);

Point reference_solution(OracleKind kind, const ProblemSpec& problem, double t);
// u(t-); equals the value at t except at atoms.
Point reference_left_limit(OracleKind kind, const ProblemSpec& problem, double t);

}  // namespace mdi
