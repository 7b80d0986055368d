#include "mdi/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mdi {

RhoSpec::RhoSpec(double horizon, std::vector<double> ac_breakpoints,
                 std::vector<double> ac_density, std::vector<Atom> atoms)
    : horizon_(horizon), atoms_(std::move(atoms)) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("rho: horizon must be a positive finite time");
  }
  for (double b : ac_breakpoints) {
    if (b < 0.0 || b > horizon) throw DomainError("rho: ac breakpoint outside [0,T]");
  }
  for (double r : ac_density) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("rho: ac density must be nonnegative");
  }
  density_ = PiecewiseConstant(std::move(ac_breakpoints), std::move(ac_density));
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const Atom& a = atoms_[k];
    if (!(a.time > 0.0) || a.time > horizon) {
      throw DomainError("rho: atom times must lie in (0,T]");
    }
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw DomainError("rho: atom masses must be positive");
    }
    if (k > 0 && !(a.time > atoms_[k - 1].time)) {
      throw DomainError("rho: atom times must be strictly increasing");
    }
  }
}

void RhoSpec::check_time(double t, const char* op) const {
  if (!(t >= 0.0 && t <= horizon_)) {
    std::ostringstream os;
    os << op << ": time " << t << " outside [0," << horizon_ << "]";
    throw DomainError(os.str());
  }
}

double RhoSpec::jump_sum(double s, double t) const {
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (a.time > s && a.time <= t) total += a.mass;
  }
  return total;
}

double RhoSpec::eval(double t) const { return ac_integral(0.0, t) + jump_sum(0.0, t); }

double RhoSpec::left_limit(double t) const { return eval(t) - atom_mass(t); }

double RhoSpec::rho_measure(HalfOpenInterval iv) const {
  if (iv.right <= iv.left) return 0.0;
  return ac_integral(iv.left, iv.right) + jump_sum(iv.left, iv.right);
}

double RhoSpec::nu_measure(HalfOpenInterval iv) const {
  if (iv.right <= iv.left) return 0.0;
  return (iv.right - iv.left) + rho_measure(iv);
}

double RhoSpec::atom_mass(double t) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                             [](const Atom& a, double x) { return a.time < x; });
  return (it != atoms_.end() && it->time == t) ? it->mass : 0.0;
}

double RhoSpec::lambda_density(double t) const {
  if (atom_mass(t) > 0.0) return 0.0;
  return 1.0 / (1.0 + rate(t));
}

double RhoSpec::atom_free_nu(double s, double t) const {
  if (t <= s) return 0.0;
  return (t - s) + ac_integral(s, t);
}

double RhoSpec::atom_free_inverse(double s, double w) const {
  const auto& bps = density_.breakpoints();
  const auto& vals = density_.values();
  std::size_t k = active_piece(bps, s);
  double left = s;
  double remaining = w;
  while (true) {
    const double right = k + 1 < bps.size() ? std::min(horizon_, bps[k + 1]) : horizon_;
    const double slope = 1.0 + vals[k];
    const double piece = (right - left) * slope;
    if (remaining <= piece || k + 1 >= bps.size() || right >= horizon_) {
      return std::min(horizon_, left + remaining / slope);
    }
    remaining -= piece;
    left = right;
    ++k;
  }
}

RhoSpec RhoSpec::scaled(double factor) const {
  std::vector<double> dens = density_.values();
  for (double& r : dens) r *= factor;
  std::vector<Atom> atoms;
  if (factor > 0.0) {
    atoms = atoms_;
    for (Atom& a : atoms) a.mass *= factor;
  }
  return {horizon_, density_.breakpoints(), std::move(dens), std::move(atoms)};
}

double rho_eval(const RhoSpec& spec, double t) {
  if (!(t >= 0.0 && t <= spec.horizon())) {
    throw DomainError("rho_eval: time outside [0,T]");
  }
  return spec.eval(t);
}

double nu_interval(const RhoSpec& spec, HalfOpenInterval iv) {
  if (!(iv.left >= 0.0 && iv.left <= iv.right && iv.right <= spec.horizon())) {
    throw DomainError("nu_interval: interval must satisfy 0 <= s <= t <= T");
  }
  return spec.nu_measure(iv);
}

double atom_mass(const RhoSpec& spec, double t) {
  if (!(t >= 0.0 && t <= spec.horizon())) throw DomainError("atom_mass: time outside [0,T]");
  return spec.atom_mass(t);
}

double lambda_density(const RhoSpec& spec, double t) {
  if (!(t >= 0.0 && t <= spec.horizon())) {
    throw DomainError("lambda_density: time outside [0,T]");
  }
  return spec.lambda_density(t);
}

Measure::Measure(RhoSpec rho, double lebesgue_weight, double stieltjes_weight)
    : rho_(std::move(rho)), lebesgue_weight_(lebesgue_weight), stieltjes_weight_(stieltjes_weight) {
  if (lebesgue_weight < 0.0 || stieltjes_weight < 0.0) {
    throw DomainError("measure: weights must be nonnegative");
  }
}

double Measure::interval(HalfOpenInterval iv) const {
  if (iv.right <= iv.left) return 0.0;
  return lebesgue_weight_ * (iv.right - iv.left) + stieltjes_weight_ * rho_.rho_measure(iv);
}

double Measure::integrate(const PiecewiseConstant& g, double s, double t) const {
  if (t <= s) return 0.0;
  double total = lebesgue_weight_ * g.integral(s, t);
  if (stieltjes_weight_ == 0.0) return total;

  // Absolutely continuous part: g * rate is constant between merged breakpoints.
  std::vector<double> cuts{s, t};
  for (double b : g.breakpoints()) {
    if (b > s && b < t) cuts.push_back(b);
  }
  for (double b : rho_.ac_density().breakpoints()) {
    if (b > s && b < t) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double ac = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    ac += g(cuts[k]) * rho_.rate(cuts[k]) * (cuts[k + 1] - cuts[k]);
  }
  double jumps = 0.0;
  for (const Atom& a : rho_.atoms()) {
    if (a.time > s && a.time <= t) jumps += g(a.time) * a.mass;
  }
  return total + stieltjes_weight_ * (ac + jumps);
}

}  // namespace mdi
