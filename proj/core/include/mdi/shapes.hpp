#pragma once

#include <variant>
#include <vector>

#include "mdi/types.hpp"

namespace mdi {

struct Box {
  Point lower;
  Point upper;
};

struct Ball {
  Point center;
  double radius;
};

// {x : <normal, x> >= offset}
struct HalfSpace {
  Point normal;
  double offset;
};

// Intersection of finitely many half-spaces.
struct Polyhedron {
  std::vector<HalfSpace> faces;
};

using Shape = std::variant<Box, Ball, HalfSpace, Polyhedron>;

struct DykstraOptions {
  int max_iterations = 10000;
  double tolerance = 1e-10;
};

// Throws DomainError for empty or malformed shapes.
void validate_shape(const Shape& shape);
Eigen::Index shape_dimension(const Shape& shape);
Shape translated(const Shape& shape, const Point& v);

// Metric projection. Polyhedra go through Dykstra's alternating projection
// followed by an active-set polish that is accepted only when its KKT
// conditions verify; throws ConvergenceError when neither route succeeds.
Point project(const Shape& shape, const Point& x, const DykstraOptions& opts = {});
double distance_to(const Shape& shape, const Point& x, const DykstraOptions& opts = {});

// A point of the set and a length scale, used to place random probes.
struct ShapeFrame {
  Point anchor;
  double extent;
};
ShapeFrame frame_of(const Shape& shape);

}  // namespace mdi
