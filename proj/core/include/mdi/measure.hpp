#pragma once

#include <vector>

#include "mdi/piecewise.hpp"

namespace mdi {

struct Atom {
  double time;
  double mass;
};

// ]left, right]; left == right is the empty interval.
struct HalfOpenInterval {
  double left;
  double right;
};

// Nondecreasing right-continuous rho on [0,T] with rho(0) = 0, written as an
// absolutely continuous part with piecewise-constant rate plus finitely many
// atoms in (0,T]. Induces d(rho) and the control measure nu = lambda + d(rho).
class RhoSpec {
 public:
  RhoSpec(double horizon, std::vector<double> ac_breakpoints, std::vector<double> ac_density,
          std::vector<Atom> atoms);

  static RhoSpec zero(double horizon) { return {horizon, {0.0}, {0.0}, {}}; }

  double horizon() const { return horizon_; }
  const PiecewiseConstant& ac_density() const { return density_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  // rho(t), atom at t included.
  double eval(double t) const;
  // rho(t-).
  double left_limit(double t) const;
  double ac_integral(double s, double t) const { return density_.integral(s, t); }
  // Total atom mass in ]s,t].
  double jump_sum(double s, double t) const;
  double rho_measure(HalfOpenInterval iv) const;
  double nu_measure(HalfOpenInterval iv) const;
  double atom_mass(double t) const;
  // Rate of the absolutely continuous part active on [t, t + eps).
  double rate(double t) const { return density_(t); }
  double lambda_density(double t) const;
  double total_nu() const { return nu_measure({0.0, horizon_}); }

  // Atom-free part of nu over ]s,t]: (t - s) + integral of the rate.
  double atom_free_nu(double s, double t) const;
  // The t >= s with atom_free_nu(s, t) == w (clamped to T).
  double atom_free_inverse(double s, double w) const;

  RhoSpec scaled(double factor) const;

 private:
  void check_time(double t, const char* op) const;

  double horizon_;
  PiecewiseConstant density_;
  std::vector<Atom> atoms_;
};

// Free-function forms with domain checking.
double rho_eval(const RhoSpec& spec, double t);
double nu_interval(const RhoSpec& spec, HalfOpenInterval iv);
double atom_mass(const RhoSpec& spec, double t);
double lambda_density(const RhoSpec& spec, double t);

// mu = lebesgue_weight * lambda + stieltjes_weight * d(rho).
class Measure {
 public:
  Measure(RhoSpec rho, double lebesgue_weight, double stieltjes_weight);

  static Measure lebesgue(double horizon) { return {RhoSpec::zero(horizon), 1.0, 0.0}; }
  static Measure stieltjes(const RhoSpec& rho) { return {rho, 0.0, 1.0}; }
  static Measure control(const RhoSpec& rho) { return {rho, 1.0, 1.0}; }

  const RhoSpec& rho() const { return rho_; }
  double horizon() const { return rho_.horizon(); }
  double interval(HalfOpenInterval iv) const;
  double atom(double t) const { return stieltjes_weight_ * rho_.atom_mass(t); }
  // Integral of g over ]s,t] with respect to mu, g right continuous.
  double integrate(const PiecewiseConstant& g, double s, double t) const;

 private:
  RhoSpec rho_;
  double lebesgue_weight_;
  double stieltjes_weight_;
};

}  // namespace mdi
