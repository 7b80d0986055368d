#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "mdi/operators.hpp"
#include "mdi/perturbation.hpp"
#include "mdi/vladimirov.hpp"

namespace mdi {

// -du/dnu in A(t)u + f(t,u) dlambda/dnu, u(0) = u0 on [0,T], with nu built
// from the operator's rho certificate.
class ProblemSpec {
 public:
  ProblemSpec(OperatorFamily family, Perturbation perturbation, Point u0);

  const OperatorFamily& family() const { return family_; }
  const Perturbation& perturbation() const { return perturbation_; }
  const Point& initial_state() const { return u0_; }
  const RhoSpec& rho() const { return family_.rho_certificate(); }
  double horizon() const { return family_.horizon(); }
  Eigen::Index dimension() const { return family_.dimension(); }

  ProblemSpec with_initial_state(Point u0) const { return {family_, perturbation_, std::move(u0)}; }
  ProblemSpec with_family(OperatorFamily family) const { return {std::move(family), perturbation_, u0_}; }

 private:
  OperatorFamily family_;
  Perturbation perturbation_;
  Point u0_;
};

using ProblemPtr = std::shared_ptr<const ProblemSpec>;

struct AuditOptions {
  std::size_t h2_samples = 2000;
  std::size_t h1_random_times = 8;
  std::size_t graph_points = 48;
  std::size_t perturbation_samples = 2000;
  std::uint64_t seed = 1;
};

struct HypothesisAudit {
  H2Report h2;
  H1Report h1;
  GrowthAudit growth;
  LipschitzAudit lipschitz;
  double initial_domain_distance = 0.0;
  std::uint64_t seed = 0;
  bool pass() const {
    return h2.pass && h1.pass && growth.pass && lipschitz.pass &&
           initial_domain_distance <= kDomainTolerance;
  }
};

HypothesisAudit audit_hypotheses(const ProblemSpec& problem, const AuditOptions& opts = {});
std::string format_audit(const HypothesisAudit& audit);

}  // namespace mdi
