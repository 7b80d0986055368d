#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdi/partition.hpp"
#include "mdi/problem.hpp"
#include "mdi/trajectory.hpp"

namespace mdi {

// A-priori constants of the catching-up scheme, from c, m, ||u0|| and nu(]0,T]):
//   m1 = (||u0|| + (2(1+c) + m) nu) exp((2c + m) nu)
//   m2 = (2c + m) m1 + 2(1+c) + m,   M = max(m1, m2)
//   M1 = M + 2m(1+M), M2 = M + M1, M3 = M + m(1+M), M4 = m(1+M), M5 = M3 + M4
struct AprioriConstants {
  double c = 0.0;
  double m = 0.0;
  double u0_norm = 0.0;
  double nu_total = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double M = 0.0;
  double M1 = 0.0;
  double M2 = 0.0;
  double M3 = 0.0;
  double M4 = 0.0;
  double M5 = 0.0;
};

AprioriConstants a_priori_bounds(const ProblemSpec& problem);

struct LevelRecord {
  std::size_t level = 0;
  double eps = 0.0;
  std::size_t cells = 0;
  // sup gap to the previous level on the merged node grid; NaN at level 0.
  double gap = 0.0;
  // Worst observed ||u_i|| / m1 and ||u_{i+1} - u_i|| / (m2 beta_i).
  double norm_ratio = 0.0;
  double increment_ratio = 0.0;
};

struct VerificationSummary {
  bool pass = false;
  double tol = 0.0;
  double worst_slack = 0.0;
  double worst_domain_distance = 0.0;
};

struct SolveReport {
  AprioriConstants constants;
  std::vector<LevelRecord> levels;
  std::size_t final_level = 0;
  double final_eps = 0.0;
  std::optional<VerificationSummary> verification;
};

std::string format_report(const SolveReport& report);

struct SolveOptions {
  double eps0 = 0.1;
  std::size_t max_levels = 10;
  double tol = 1e-3;
  // When set, each level draws a randomized partition from (seed, level).
  std::optional<std::uint64_t> partition_seed;
  // Consecutive gaps <= tol required before stopping. Randomized partitions
  // are not nested, so one small gap can be a coincidence.
  std::size_t confirmations = 1;
};

// One resolvent step: J^{A(t_{i+1})}_{beta_i}(u_i - int_{t_i}^{t_{i+1}} f(s, u_i) ds).
Point step(const ProblemSpec& problem, const Partition& partition, std::size_t i, const Point& u_i);

// Runs the scheme on one partition, asserting ||u_i|| <= m1 and
// ||u_{i+1} - u_i|| <= m2 beta_i and the declared c, m, alpha along the way
// (BoundViolation otherwise). `stats` receives the observed ratios.
Trajectory run_scheme(const ProblemPtr& problem, const Partition& partition,
                      const AprioriConstants& bounds, LevelRecord* stats = nullptr);
Trajectory run_scheme(const ProblemPtr& problem, double eps,
                      std::optional<std::uint64_t> partition_seed = std::nullopt);

struct SolveResult {
  Trajectory trajectory;
  SolveReport report;
};

// Refines eps_k = eps0 2^-k until the sup gap between consecutive levels is
// <= tol (`confirmations` times in a row); NonConvergenceError with the gap
// history otherwise.
SolveResult solve(const ProblemPtr& problem, const SolveOptions& opts);

}  // namespace mdi
