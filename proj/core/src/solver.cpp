#include "mdi/solver.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "mdi/errors.hpp"
#include "mdi/sampling.hpp"

namespace mdi {
namespace {

constexpr double kRelSlack = 1e-12;
constexpr double kAuditSlack = 1e-9;

bool within(double value, double bound, double rel) {
  return value <= bound * (1.0 + rel) + 1e-12;
}

[[noreturn]] void violation(const std::string& what, std::size_t i, double t, double value,
                            double bound) {
  std::ostringstream os;
  os << std::setprecision(17) << "solve aborted: " << what << " at node " << i << " (t = " << t
     << "): " << value << " > " << bound;
  throw BoundViolation(os.str());
}

}  // namespace

AprioriConstants a_priori_bounds(const ProblemSpec& problem) {
  AprioriConstants k;
  k.c = problem.family().growth_c();
  k.m = problem.perturbation().declared_m();
  k.u0_norm = problem.initial_state().norm();
  k.nu_total = problem.rho().total_nu();
  const double rate = 2.0 * k.c + k.m;
  const double affine = 2.0 * (1.0 + k.c) + k.m;
  k.m1 = (k.u0_norm + affine * k.nu_total) * std::exp(rate * k.nu_total);
  k.m2 = rate * k.m1 + affine;
  k.M = std::max(k.m1, k.m2);
  k.M1 = k.M + 2.0 * k.m * (1.0 + k.M);
  k.M2 = k.M + k.M1;
  k.M3 = k.M + k.m * (1.0 + k.M);
  k.M4 = k.m * (1.0 + k.M);
  k.M5 = k.M3 + k.M4;
  return k;
}

Point step(const ProblemSpec& problem, const Partition& partition, std::size_t i, const Point& u_i) {
  if (i >= partition.cells()) throw DomainError("step: cell index out of range");
  const double left = partition.nodes[i];
  const double right = partition.nodes[i + 1];
  const double dist = problem.family().domain_distance(left, u_i);
  if (dist > kDomainTolerance) {
    std::ostringstream os;
    os << "step: u_i is outside D(A(t_i)) at distance " << dist;
    throw DomainError(os.str());
  }
  const Point forced =
      u_i - integrate_force(problem.perturbation(), left, right, u_i, partition.eps);
  return problem.family().resolvent(right, partition.beta[i], forced);
}

Trajectory run_scheme(const ProblemPtr& problem, const Partition& partition,
                      const AprioriConstants& bounds, LevelRecord* stats) {
  const ProblemSpec& p = *problem;
  const Perturbation& f = p.perturbation();
  std::vector<Point> values;
  values.reserve(partition.nodes.size());
  values.push_back(p.initial_state());
  double norm_ratio = 0.0;
  double increment_ratio = 0.0;

  for (std::size_t i = 0; i < partition.cells(); ++i) {
    const Point& u = values.back();
    const double t = partition.nodes[i];
    const double u_norm = u.norm();
    if (!within(u_norm, bounds.m1, kRelSlack)) violation("||u_i|| <= m1", i, t, u_norm, bounds.m1);
    if (bounds.m1 > 0.0) norm_ratio = std::max(norm_ratio, u_norm / bounds.m1);

    const double a0 = p.family().minimal_section(t, u).norm();
    if (!within(a0, bounds.c * (1.0 + u_norm), kAuditSlack)) {
      violation("declared c: ||A0(t,u)|| <= c(1+||u||)", i, t, a0, bounds.c * (1.0 + u_norm));
    }
    const double mid = 0.5 * (t + partition.nodes[i + 1]);
    if (!f.is_zero()) {
      const double fu = f(mid, u).norm();
      if (!within(fu, bounds.m * (1.0 + u_norm), kAuditSlack)) {
        violation("declared m: ||f(t,u)|| <= m(1+||u||)", i, mid, fu, bounds.m * (1.0 + u_norm));
      }
    }

    Point next = step(p, partition, i, u);
    const double inc = (next - u).norm();
    const double allowed = bounds.m2 * partition.beta[i];
    if (!within(inc, allowed, kRelSlack)) violation("||u_{i+1} - u_i|| <= m2 beta", i, t, inc, allowed);
    if (allowed > 0.0) increment_ratio = std::max(increment_ratio, inc / allowed);

    if (!f.is_zero() && inc > 0.0) {
      const double df = (f(mid, next) - f(mid, u)).norm();
      const double lip = f.alpha()(mid) * inc;
      if (!within(df, lip, kAuditSlack)) violation("declared alpha (Lipschitz)", i, mid, df, lip);
    }
    values.push_back(std::move(next));
  }
  const double last = values.back().norm();
  if (!within(last, bounds.m1, kRelSlack)) {
    violation("||u_i|| <= m1", partition.cells(), partition.horizon(), last, bounds.m1);
  }
  if (bounds.m1 > 0.0) norm_ratio = std::max(norm_ratio, last / bounds.m1);
  if (stats) {
    stats->eps = partition.eps;
    stats->cells = partition.cells();
    stats->norm_ratio = norm_ratio;
    stats->increment_ratio = increment_ratio;
  }
  return {problem, partition, std::move(values)};
}

Trajectory run_scheme(const ProblemPtr& problem, double eps,
                      std::optional<std::uint64_t> partition_seed) {
  const Partition partition = build_partition(problem->rho(), eps, problem->horizon(), partition_seed);
  return run_scheme(problem, partition, a_priori_bounds(*problem));
}

SolveResult solve(const ProblemPtr& problem, const SolveOptions& opts) {
  if (!(opts.eps0 > 0.0)) throw DomainError("solve: eps0 must be positive");
  if (!(opts.tol > 0.0)) throw DomainError("solve: tol must be positive");
  if (opts.confirmations == 0) throw DomainError("solve: confirmations must be positive");
  SolveReport report;
  report.constants = a_priori_bounds(*problem);
  std::optional<Trajectory> previous;
  std::vector<double> gaps;
  std::size_t streak = 0;
  for (std::size_t level = 0; level < opts.max_levels; ++level) {
    const double eps = opts.eps0 * std::ldexp(1.0, -static_cast<int>(level));
    std::optional<std::uint64_t> seed;
    if (opts.partition_seed) seed = mix_seed(*opts.partition_seed, level);
    const Partition partition = build_partition(problem->rho(), eps, problem->horizon(), seed);
    LevelRecord record;
    record.level = level;
    Trajectory current = run_scheme(problem, partition, report.constants, &record);
    record.gap = std::numeric_limits<double>::quiet_NaN();
    if (previous) {
      record.gap = sup_distance(current, *previous);
      gaps.push_back(record.gap);
    }
    report.levels.push_back(record);
    streak = previous && record.gap <= opts.tol ? streak + 1 : 0;
    if (streak >= opts.confirmations) {
      report.final_level = level;
      report.final_eps = eps;
      return {std::move(current), std::move(report)};
    }
    previous.emplace(std::move(current));
  }
  std::ostringstream os;
  os << "solve: Cauchy gap did not reach tol " << opts.tol << " within " << opts.max_levels
     << " levels; gaps:";
  for (double g : gaps) os << ' ' << g;
  throw NonConvergenceError(os.str(), gaps);
}

std::string format_report(const SolveReport& r) {
  const AprioriConstants& k = r.constants;
  std::ostringstream os;
  os << std::setprecision(10);
  os << "constants: c=" << k.c << " m=" << k.m << " |u0|=" << k.u0_norm << " nu(]0,T])="
     << k.nu_total << "\n";
  os << "  m1=" << k.m1 << " m2=" << k.m2 << " M=" << k.M << "\n";
  os << "  M1=" << k.M1 << " M2=" << k.M2 << " M3=" << k.M3 << " M4=" << k.M4 << " M5=" << k.M5
     << "\n";
  os << "levels:\n";
  os << "  level eps cells gap |u|/m1 |du|/(m2 beta)\n";
  for (const LevelRecord& l : r.levels) {
    os << "  " << l.level << ' ' << l.eps << ' ' << l.cells << ' ';
    if (std::isnan(l.gap)) {
      os << '-';
    } else {
      os << l.gap;
    }
    os << ' ' << l.norm_ratio << ' ' << l.increment_ratio << "\n";
  }
  os << "final level: " << r.final_level << " (eps " << r.final_eps << ")\n";
  if (r.verification) {
    const VerificationSummary& v = *r.verification;
    os << "verification: " << (v.pass ? "PASS" : "FAIL") << " tol=" << v.tol
       << " worst slack=" << v.worst_slack << " worst domain distance=" << v.worst_domain_distance
       << "\n";
  }
  return os.str();
}

}  // namespace mdi
