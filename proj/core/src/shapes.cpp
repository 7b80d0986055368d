#include "mdi/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mdi/errors.hpp"

namespace mdi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Point project_halfspace(const HalfSpace& h, const Point& x) {
  const double gap = h.offset - h.normal.dot(x);
  if (gap <= 0.0) return x;
  return x + (gap / h.normal.squaredNorm()) * h.normal;
}

double violation(const Polyhedron& poly, const Point& x) {
  double worst = 0.0;
  for (const HalfSpace& h : poly.faces) {
    worst = std::max(worst, (h.offset - h.normal.dot(x)) / h.normal.norm());
  }
  return worst;
}

// Solve the equality-constrained projection on `active` and accept it if the
// multipliers are nonnegative and every face is satisfied.
bool polish(const Polyhedron& poly, const Point& x, const std::vector<std::size_t>& active,
            Point& out) {
  if (active.empty()) {
    if (violation(poly, x) > 0.0) return false;
    out = x;
    return true;
  }
  const Eigen::Index d = x.size();
  const auto k = static_cast<Eigen::Index>(active.size());
  Matrix normals(k, d);
  Point rhs(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const HalfSpace& h = poly.faces[active[static_cast<std::size_t>(r)]];
    normals.row(r) = h.normal.transpose();
    rhs(r) = h.offset - h.normal.dot(x);
  }
  const Matrix gram = normals * normals.transpose();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(gram);
  const Point mu = cod.solve(rhs);
  const double mu_scale = 1.0 + mu.cwiseAbs().maxCoeff();
  if (mu.minCoeff() < -1e-12 * mu_scale) return false;
  Point candidate = x + normals.transpose() * mu.cwiseMax(0.0);
  const double scale = 1.0 + candidate.norm() + x.norm();
  for (const HalfSpace& h : poly.faces) {
    const double slack = h.normal.dot(candidate) - h.offset;
    if (slack < -1e-13 * scale * h.normal.norm()) return false;
  }
  out = std::move(candidate);
  return true;
}

Point project_polyhedron(const Polyhedron& poly, const Point& x, const DykstraOptions& opts) {
  if (violation(poly, x) <= 0.0) return x;
  const std::size_t n = poly.faces.size();
  std::vector<Point> increments(n, Point::Zero(x.size()));
  Point current = x;
  double change = std::numeric_limits<double>::infinity();
  double infeasibility = violation(poly, x);
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const Point before = current;
    for (std::size_t i = 0; i < n; ++i) {
      const Point shifted = current + increments[i];
      current = project_halfspace(poly.faces[i], shifted);
      increments[i] = shifted - current;
    }
    change = (current - before).norm();
    infeasibility = violation(poly, current);
    if (change <= opts.tolerance && infeasibility <= opts.tolerance) break;
  }

  std::vector<std::size_t> by_multiplier;
  std::vector<std::size_t> by_tightness;
  const double scale = 1.0 + current.norm();
  for (std::size_t i = 0; i < n; ++i) {
    if (increments[i].squaredNorm() > 0.0) by_multiplier.push_back(i);
    const HalfSpace& h = poly.faces[i];
    if (std::abs(h.normal.dot(current) - h.offset) <= 1e-8 * scale * h.normal.norm()) {
      by_tightness.push_back(i);
    }
  }
  Point exact;
  if (polish(poly, x, by_multiplier, exact) || polish(poly, x, by_tightness, exact)) {
    return exact;
  }
  if (iter < opts.max_iterations) return current;
  std::ostringstream os;
  os << "polyhedron projection: Dykstra did not converge in " << opts.max_iterations
     << " iterations (step " << change << ", infeasibility " << infeasibility << ")";
  throw ConvergenceError(os.str(), std::max(change, infeasibility));
}

void require_dimension(const Point& v, Eigen::Index d, const char* what) {
  if (v.size() != d) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << v.size() << " vs " << d << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

Eigen::Index shape_dimension(const Shape& shape) {
  return std::visit(Overloaded{
                        [](const Box& b) { return b.lower.size(); },
                        [](const Ball& b) { return b.center.size(); },
                        [](const HalfSpace& h) { return h.normal.size(); },
                        [](const Polyhedron& p) {
                          return p.faces.empty() ? Eigen::Index{0} : p.faces.front().normal.size();
                        },
                    },
                    shape);
}

void validate_shape(const Shape& shape) {
  const Eigen::Index d = shape_dimension(shape);
  if (d <= 0) throw DomainError("shape: dimension must be positive");
  std::visit(Overloaded{
                 [&](const Box& b) {
                   require_dimension(b.upper, d, "box");
                   for (Eigen::Index i = 0; i < d; ++i) {
                     if (!(b.lower(i) <= b.upper(i))) {
                       throw DomainError("box: lower bound exceeds upper bound");
                     }
                   }
                 },
                 [&](const Ball& b) {
                   if (!(b.radius >= 0.0)) throw DomainError("ball: radius must be nonnegative");
                 },
                 [&](const HalfSpace& h) {
                   if (!(h.normal.norm() > 0.0)) throw DomainError("half-space: zero normal");
                 },
                 [&](const Polyhedron& p) {
                   for (const HalfSpace& h : p.faces) {
                     require_dimension(h.normal, d, "polyhedron");
                     if (!(h.normal.norm() > 0.0)) throw DomainError("polyhedron: zero normal");
                   }
                   // Nonempty iff projecting some point lands in the set. On an
                   // empty intersection Dykstra cycles instead of converging.
                   Point probe;
                   try {
                     probe = project_polyhedron(p, Point::Zero(d), {});
                   } catch (const ConvergenceError& e) {
                     throw DomainError(std::string("polyhedron: empty set (") + e.what() + ")");
                   }
                   if (violation(p, probe) > 1e-8) throw DomainError("polyhedron: empty set");
                 },
             },
             shape);
}

Shape translated(const Shape& shape, const Point& v) {
  return std::visit(Overloaded{
                        [&](const Box& b) -> Shape { return Box{b.lower + v, b.upper + v}; },
                        [&](const Ball& b) -> Shape { return Ball{b.center + v, b.radius}; },
                        [&](const HalfSpace& h) -> Shape {
                          return HalfSpace{h.normal, h.offset + h.normal.dot(v)};
                        },
                        [&](const Polyhedron& p) -> Shape {
                          Polyhedron out;
                          for (const HalfSpace& h : p.faces) {
                            out.faces.push_back({h.normal, h.offset + h.normal.dot(v)});
                          }
                          return out;
                        },
                    },
                    shape);
}

Point project(const Shape& shape, const Point& x, const DykstraOptions& opts) {
  return std::visit(Overloaded{
                        [&](const Box& b) -> Point { return x.cwiseMax(b.lower).cwiseMin(b.upper); },
                        [&](const Ball& b) -> Point {
                          const Point offset = x - b.center;
                          const double r = offset.norm();
                          if (r <= b.radius) return x;
                          return b.center + (b.radius / r) * offset;
                        },
                        [&](const HalfSpace& h) { return project_halfspace(h, x); },
                        [&](const Polyhedron& p) { return project_polyhedron(p, x, opts); },
                    },
                    shape);
}

double distance_to(const Shape& shape, const Point& x, const DykstraOptions& opts) {
  return std::visit(Overloaded{
                        [&](const Box& b) { return (x - x.cwiseMax(b.lower).cwiseMin(b.upper)).norm(); },
                        [&](const Ball& b) { return std::max(0.0, (x - b.center).norm() - b.radius); },
                        [&](const HalfSpace& h) {
                          return std::max(0.0, h.offset - h.normal.dot(x)) / h.normal.norm();
                        },
                        [&](const Polyhedron& p) {
                          if (violation(p, x) <= 0.0) return 0.0;
                          return (x - project_polyhedron(p, x, opts)).norm();
                        },
                    },
                    shape);
}

ShapeFrame frame_of(const Shape& shape) {
  return std::visit(Overloaded{
                        [](const Box& b) {
                          return ShapeFrame{0.5 * (b.lower + b.upper), 0.5 * (b.upper - b.lower).norm()};
                        },
                        [](const Ball& b) { return ShapeFrame{b.center, b.radius}; },
                        [](const HalfSpace& h) {
                          return ShapeFrame{(h.offset / h.normal.squaredNorm()) * h.normal, 0.0};
                        },
                        [](const Polyhedron& p) {
                          const Eigen::Index d = p.faces.front().normal.size();
                          return ShapeFrame{project_polyhedron(p, Point::Zero(d), {}), 0.0};
                        },
                    },
                    shape);
}

}  // namespace mdi
