#include "mdi/problem.hpp"

#include <sstream>

#include "mdi/errors.hpp"

namespace mdi {

ProblemSpec::ProblemSpec(OperatorFamily family, Perturbation perturbation, Point u0)
    : family_(std::move(family)), perturbation_(std::move(perturbation)), u0_(std::move(u0)) {
  if (perturbation_.dimension() != family_.dimension()) {
    throw DomainError("problem: perturbation and operator dimensions differ");
  }
  if (u0_.size() != family_.dimension()) {
    throw DomainError("problem: initial state has the wrong dimension");
  }
  const double dist = family_.domain_distance(0.0, u0_);
  if (dist > kDomainTolerance) {
    std::ostringstream os;
    os << "problem: u0 is not in D(A(0)) (distance " << dist << ")";
    throw DomainError(os.str());
  }
}

HypothesisAudit audit_hypotheses(const ProblemSpec& problem, const AuditOptions& opts) {
  HypothesisAudit audit;
  audit.seed = opts.seed;
  const OperatorFamily& family = problem.family();
  DomainSampler sampler(family, mix_seed(opts.seed, 0x112));
  audit.h2 = check_h2(family, std::ref(sampler), opts.h2_samples);
  audit.h1 = audit_h1(family, h1_time_pairs(family, opts.h1_random_times, opts.seed),
                      opts.graph_points, opts.seed);
  audit.growth = audit_growth(problem.perturbation(), problem.horizon(),
                              opts.perturbation_samples, opts.seed);
  audit.lipschitz = audit_lipschitz(problem.perturbation(), problem.horizon(),
                                    opts.perturbation_samples, opts.seed);
  audit.initial_domain_distance = family.domain_distance(0.0, problem.initial_state());
  return audit;
}

std::string format_audit(const HypothesisAudit& a) {
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  std::ostringstream os;
  os << "audit seed " << a.seed << "\n";
  os << "certificate " << verdict(a.h1.pass) << ": " << a.h1.pairs_checked
     << " time pairs, worst margin " << a.h1.worst_margin << " at ]" << a.h1.worst_s << ", "
     << a.h1.worst_t << "]";
  if (!a.h1.violations.empty()) {
    const H1Violation& v = a.h1.violations.front();
    os << "; first violation dis(A(" << v.t << "), A(" << v.s << ")) >= " << v.dis
       << " > rho increment " << v.increment;
  }
  os << "\n";
  os << "operator growth " << verdict(a.h2.pass) << ": max ||A0(t,x)||/(1+||x||) = " << a.h2.max_ratio
     << " vs c = " << a.h2.growth_c << " over " << a.h2.samples << " samples\n";
  os << "perturbation growth " << verdict(a.growth.pass) << ": max ||f(t,x)||/(1+||x||) = " << a.growth.max_ratio
     << " vs m = " << a.growth.declared_m << "\n";
  os << "perturbation Lipschitz " << verdict(a.lipschitz.pass) << ": worst relative excess "
     << a.lipschitz.worst_excess << " over " << a.lipschitz.samples << " difference quotients\n";
  os << "u0 " << verdict(a.initial_domain_distance <= kDomainTolerance)
     << ": distance to D(A(0)) = " << a.initial_domain_distance << "\n";
  return os.str();
}

}  // namespace mdi
