#pragma once

#include <vector>

#include "mdi/partition.hpp"
#include "mdi/problem.hpp"

namespace mdi {

// Piecewise candidate solution: node values u_i on a partition plus the
// interpolant
//   u(t) = u_i + nu(]t_i,t]) / beta_i * (u_{i+1} - u_i + F_i) - int_{t_i}^t f(s,u_i) ds
// on [t_i, t_{i+1}), u(T) = u_q, where F_i is the cell's force integral.
class Trajectory {
 public:
  Trajectory(ProblemPtr problem, Partition partition, std::vector<Point> values);

  const ProblemSpec& problem() const { return *problem_; }
  const ProblemPtr& problem_ptr() const { return problem_; }
  const Partition& partition() const { return partition_; }
  const std::vector<Point>& values() const { return values_; }
  const Point& node_value(std::size_t i) const { return values_[i]; }
  // Integral of f(s, u_i) over cell i by the scheme's quadrature.
  const Point& cell_force(std::size_t i) const { return forces_[i]; }
  double horizon() const { return partition_.horizon(); }
  Eigen::Index dimension() const { return problem_->dimension(); }

  Point at(double t) const;
  // u(t-); equals at(t) except at atoms.
  Point left_limit(double t) const;
  // (u_{i+1} - u_i + F_i) / beta_i: the density of du + f dlambda on cell i.
  Point cell_quotient(std::size_t i) const;
  // du/dnu(t) for t in ]t_i, t_{i+1}]: cell_quotient(i) - f(t, u_i) dlambda/dnu(t).
  Point density(double t) const;

  // Sum of ||u_{i+1} - u_i||.
  double node_variation() const;

 private:
  ProblemPtr problem_;
  Partition partition_;
  std::vector<Point> values_;
  std::vector<Point> forces_;
};

// Operation-style aliases.
Point interpolate(const Trajectory& traj, double t);
Point density_estimate(const Trajectory& traj, double t);

// sup over the merged node grid of ||u(t) - v(t)||.
double sup_distance(const Trajectory& u, const Trajectory& v);
std::vector<double> merged_nodes(const Trajectory& u, const Trajectory& v);

}  // namespace mdi
