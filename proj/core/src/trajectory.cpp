#include "mdi/trajectory.hpp"

#include <algorithm>

#include "mdi/errors.hpp"

namespace mdi {

Trajectory::Trajectory(ProblemPtr problem, Partition partition, std::vector<Point> values)
    : problem_(std::move(problem)), partition_(std::move(partition)), values_(std::move(values)) {
  if (!problem_) throw PreconditionError("trajectory: problem is required");
  if (values_.size() != partition_.nodes.size()) {
    throw DomainError("trajectory: one value per partition node is required");
  }
  if (partition_.horizon() != problem_->horizon()) {
    throw DomainError("trajectory: partition horizon differs from the problem's");
  }
  for (const Point& u : values_) {
    if (u.size() != problem_->dimension()) throw DomainError("trajectory: node value dimension");
  }
  forces_.reserve(partition_.cells());
  for (std::size_t i = 0; i < partition_.cells(); ++i) {
    forces_.push_back(integrate_force(problem_->perturbation(), partition_.nodes[i],
                                      partition_.nodes[i + 1], values_[i], partition_.eps));
  }
}

Point Trajectory::cell_quotient(std::size_t i) const {
  return (values_[i + 1] - values_[i] + forces_[i]) / partition_.beta[i];
}

Point Trajectory::at(double t) const {
  if (!(t >= 0.0 && t <= horizon())) throw DomainError("trajectory: time outside [0,T]");
  if (t == horizon()) return values_.back();
  const std::size_t i = partition_.cell_containing(t);
  const double left = partition_.nodes[i];
  if (t == left) return values_[i];
  const double ratio = problem_->rho().nu_measure({left, t}) / partition_.beta[i];
  const Point partial =
      integrate_force(problem_->perturbation(), left, t, values_[i], partition_.eps);
  return values_[i] + ratio * (values_[i + 1] - values_[i] + forces_[i]) - partial;
}

Point Trajectory::left_limit(double t) const {
  if (!(t > 0.0 && t <= horizon())) throw DomainError("trajectory: left limit needs t in (0,T]");
  const std::size_t i = partition_.cell_ending_at_or_after(t);
  const double left = partition_.nodes[i];
  const double mass = problem_->rho().nu_measure({left, t}) - problem_->rho().atom_mass(t);
  const double ratio = mass / partition_.beta[i];
  const Point partial =
      integrate_force(problem_->perturbation(), left, t, values_[i], partition_.eps);
  return values_[i] + ratio * (values_[i + 1] - values_[i] + forces_[i]) - partial;
}

Point Trajectory::density(double t) const {
  if (!(t >= 0.0 && t <= horizon())) throw DomainError("trajectory: time outside [0,T]");
  const std::size_t i = partition_.cell_ending_at_or_after(t);
  Point w = cell_quotient(i);
  const double dl = problem_->rho().lambda_density(t);
  if (dl > 0.0 && !problem_->perturbation().is_zero()) {
    w -= dl * problem_->perturbation()(t, values_[i]);
  }
  return w;
}

double Trajectory::node_variation() const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) total += (values_[i + 1] - values_[i]).norm();
  return total;
}

Point interpolate(const Trajectory& traj, double t) { return traj.at(t); }
Point density_estimate(const Trajectory& traj, double t) { return traj.density(t); }

std::vector<double> merged_nodes(const Trajectory& u, const Trajectory& v) {
  std::vector<double> grid;
  const auto& a = u.partition().nodes;
  const auto& b = v.partition().nodes;
  grid.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double sup_distance(const Trajectory& u, const Trajectory& v) {
  if (u.horizon() != v.horizon()) throw DomainError("sup_distance: horizons differ");
  double sup = 0.0;
  for (double t : merged_nodes(u, v)) sup = std::max(sup, (u.at(t) - v.at(t)).norm());
  return sup;
}

}  // namespace mdi
