#include "mdi/gronwall.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mdi/errors.hpp"

namespace mdi {

std::vector<double> gronwall_discrete(double a0, std::span<const double> alpha,
                                      std::span<const double> beta,
                                      std::span<const double> gamma) {
  if (alpha.size() != beta.size() || alpha.size() != gamma.size()) {
    throw PreconditionError("gronwall_discrete: alpha, beta, gamma must have equal length");
  }
  if (!(a0 >= 0.0)) throw PreconditionError("gronwall_discrete: a0 must be nonnegative");
  std::vector<double> out;
  out.reserve(alpha.size() + 1);
  out.push_back(a0);
  double sum_alpha = a0;
  double exponent = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (!(alpha[k] >= 0.0 && beta[k] >= 0.0 && gamma[k] >= 0.0)) {
      throw PreconditionError("gronwall_discrete: sequences must be nonnegative");
    }
    sum_alpha += alpha[k];
    exponent += static_cast<double>(k) * beta[k] + gamma[k];
    out.push_back(sum_alpha * std::exp(exponent));
  }
  return out;
}

GronwallMeasureBound::GronwallMeasureBound(PiecewiseConstant g, Measure mu, double alpha,
                                           double beta_cap)
    : g_(std::move(g)), mu_(std::move(mu)), alpha_(alpha), beta_(beta_cap) {
  if (!(beta_ >= 0.0 && beta_ < 1.0)) {
    throw PreconditionError("gronwall_measure: beta must lie in [0,1)");
  }
  if (!(alpha_ >= 0.0)) throw PreconditionError("gronwall_measure: alpha must be nonnegative");
  if (g_.min_value() < 0.0) throw PreconditionError("gronwall_measure: g must be nonnegative");
  for (const Atom& a : mu_.rho().atoms()) {
    const double weight = mu_.atom(a.time) * g_(a.time);
    if (weight > beta_) {
      std::ostringstream os;
      os << "gronwall_measure: mu({t}) g(t) = " << weight << " exceeds beta = " << beta_
         << " at t = " << a.time;
      throw PreconditionError(os.str());
    }
  }
}

double GronwallMeasureBound::operator()(double t) const {
  if (!(t >= 0.0 && t <= mu_.horizon())) throw DomainError("gronwall_measure: time outside [0,T]");
  return alpha_ * std::exp(mu_.integrate(g_, 0.0, t) / (1.0 - beta_));
}

GronwallMeasureBound gronwall_measure(const PiecewiseConstant& g, const Measure& mu, double alpha,
                                      double beta_cap) {
  return {g, mu, alpha, beta_cap};
}

GronwallCheck check_gronwall(const GronwallMeasureBound& bound, std::span<const double> times,
                             std::span<const double> phi) {
  if (times.size() != phi.size()) throw PreconditionError("check_gronwall: length mismatch");
  GronwallCheck check;
  check.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double b = bound(times[k]);
    const double margin = b - phi[k];
    if (margin < check.worst_margin) {
      check.worst_margin = margin;
      check.worst_time = times[k];
    }
    if (margin < -1e-12 * std::max(1.0, std::abs(b))) check.pass = false;
  }
  return check;
}

}  // namespace mdi
