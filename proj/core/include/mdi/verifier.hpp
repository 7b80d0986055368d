#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdi/problem.hpp"
#include "mdi/trajectory.hpp"

namespace mdi {

// Points of D(A(t)) against which the variational inequality is tested:
// `count` shape-aware draws around u(t) and the domain's anchor, plus u(t).
class ZSampler {
 public:
  explicit ZSampler(std::uint64_t seed, std::size_t count = 32) : seed_(seed), count_(count) {}

  std::vector<Point> operator()(const OperatorFamily& family, double t, const Point& u,
                                std::uint64_t stream) const;
  std::size_t count() const { return count_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::size_t count_;
};

struct Witness {
  double t = 0.0;
  Point z;
  double slack = 0.0;
  std::size_t cell = 0;  // the cell ]t_i, t_{i+1}] whose data produced the test
};

struct AtomResidual {
  double time = 0.0;
  double mass = 0.0;
  // ||u(t) - J^{A(t)}_delta(u(t-))||
  double residual = 0.0;
};

struct UniquenessReport {
  bool pass = true;
  double initial_sq_gap = 0.0;
  double factor = 1.0;  // exp(2 int_0^T alpha dlambda)
  double sup_sq_gap = 0.0;
  double worst_time = 0.0;
  double margin = 0.0;  // bound + tol - sup_sq_gap
};

struct VerificationReport {
  bool pass = true;
  double tol = 0.0;
  double worst_slack = 0.0;
  double worst_slack_time = 0.0;
  double worst_domain_distance = 0.0;
  double worst_domain_time = 0.0;
  std::size_t worst_domain_cell = 0;
  std::vector<AtomResidual> atom_residuals;
  std::optional<UniquenessReport> uniqueness;
  // Most negative slacks first.
  std::vector<Witness> witnesses;
  std::size_t test_times = 0;
  std::size_t skipped_times = 0;
  std::size_t z_per_time = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kInteriorTimesPerCell = 8;
inline constexpr std::size_t kMaxWitnesses = 8;

// 10 eps (1 + M5).
double default_verification_tol(const ProblemSpec& problem, double eps);

// Tests <A0(t,z) + du/dnu(t) + f(t,u(t)) dlambda/dnu(t), z - u(t)> >= -tol for
// z from the sampler and domain_distance(t, u(t)) <= tol, at every node and at
// kInteriorTimesPerCell random interior times of each cell. Interior times of
// a cell that ends at an atom are skipped: the interpolant spreads the jump
// over a nu-small set there.
VerificationReport check_inclusion(const Trajectory& traj, const ProblemSpec& problem,
                                   const ZSampler& sampler, double tol);

// sup_t ||u(t) - v(t)||^2 <= ||u(0) - v(0)||^2 exp(2 int_0^T alpha dlambda) + tol
// over the merged node grid.
VerificationReport check_uniqueness_bound(const Trajectory& u, const Trajectory& v,
                                          const PiecewiseConstant& alpha, double tol);

std::string format_verification(const VerificationReport& report);

}  // namespace mdi
