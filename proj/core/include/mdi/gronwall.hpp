#pragma once

#include <span>
#include <vector>

#include "mdi/measure.hpp"

namespace mdi {

// Bounds for a_j given a_{i+1} <= alpha_i + beta_i (a_0 + ... + a_{i-1}) + (1 + gamma_i) a_i:
//   out[j] = (a0 + sum_{k<j} alpha_k) exp(sum_{k<j} (k beta_k + gamma_k)),  j = 0..n.
// PreconditionError on negative input or length mismatch.
std::vector<double> gronwall_discrete(double a0, std::span<const double> alpha,
                                      std::span<const double> beta,
                                      std::span<const double> gamma);

// t -> alpha exp(int_{]0,t]} g dmu / (1 - beta)), valid for
// phi(t) <= alpha + int_{]0,t]} g phi dmu whenever mu({t}) g(t) <= beta < 1.
class GronwallMeasureBound {
 public:
  GronwallMeasureBound(PiecewiseConstant g, Measure mu, double alpha, double beta_cap);

  double operator()(double t) const;
  double alpha() const { return alpha_; }
  double beta_cap() const { return beta_; }

 private:
  PiecewiseConstant g_;
  Measure mu_;
  double alpha_;
  double beta_;
};

GronwallMeasureBound gronwall_measure(const PiecewiseConstant& g, const Measure& mu, double alpha,
                                      double beta_cap);

struct GronwallCheck {
  bool pass = true;
  double worst_margin = 0.0;  // min of bound(t) - phi(t)
  double worst_time = 0.0;
};

// Compares sampled phi(t_k) against the bound; relative slack 1e-12.
GronwallCheck check_gronwall(const GronwallMeasureBound& bound, std::span<const double> times,
                             std::span<const double> phi);

}  // namespace mdi
