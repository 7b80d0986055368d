#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mdi/measure.hpp"
#include "mdi/sampling.hpp"
#include "mdi/shapes.hpp"
#include "mdi/types.hpp"

namespace mdi {

// D(A(t)) membership tolerance used by minimal_section and the solver.
inline constexpr double kDomainTolerance = 1e-9;

// Normal cone to C(t); C is piecewise constant in time, right continuous.
struct MovingConvexSet {
  std::vector<double> starts;
  std::vector<Shape> shapes;

  static MovingConvexSet fixed(Shape shape) { return {{0.0}, {std::move(shape)}}; }
  // C(t) = base + v(t) with v piecewise constant on `starts`.
  static MovingConvexSet translating(const Shape& base, std::vector<double> starts,
                                     const std::vector<Point>& translations);
};

// A(t)x = Q(t)x with each piece monotone (PSD symmetric part, skew allowed).
struct TimeVaryingLinear {
  std::vector<double> starts;
  std::vector<Matrix> matrices;
};

// One-dimensional convex functions with closed-form prox.
struct ScalarConvex {
  enum class Kind { Abs, HalfSquare, Indicator, Hinge };
  Kind kind = Kind::Abs;
  double q = 0.0;  // HalfSquare: (1/2) q x^2
  double lower = 0.0;  // Indicator of [lower, upper]
  double upper = 0.0;

  static ScalarConvex abs() { return {Kind::Abs}; }
  static ScalarConvex half_square(double q) { return {Kind::HalfSquare, q}; }
  static ScalarConvex indicator(double lo, double hi) { return {Kind::Indicator, 0.0, lo, hi}; }
  static ScalarConvex hinge() { return {Kind::Hinge}; }

  double prox(double eta, double x) const;
  double least_subgradient(double x) const;
  double domain_distance(double x) const;
  double project_domain(double x) const;
  // Endpoints of the subdifferential at x; infinite ends come back as +-inf.
  std::pair<double, double> subdifferential(double x) const;
};

// Subdifferential of x -> sum_i phi_i(x_i), time independent.
struct SeparableSubdifferential {
  std::vector<ScalarConvex> coordinates;
};

using OperatorData = std::variant<MovingConvexSet, TimeVaryingLinear, SeparableSubdifferential>;

enum class OperatorKind { MovingConvexSet, TimeVaryingLinear, SeparableSubdifferential };
std::string to_string(OperatorKind kind);

// Time-dependent maximal monotone operator A(t) on R^d with its declared
// pseudo-distance certificate rho and growth constant c. Immutable.
class OperatorFamily {
 public:
  OperatorFamily(OperatorData data, RhoSpec rho_certificate, double growth_c,
                 DykstraOptions dykstra = {});

  Eigen::Index dimension() const { return dimension_; }
  OperatorKind kind() const;
  const OperatorData& data() const { return data_; }
  const RhoSpec& rho_certificate() const { return rho_; }
  double growth_c() const { return growth_c_; }
  double horizon() const { return rho_.horizon(); }

  // A(s) and A(t) are the same operator whenever the indices agree.
  std::size_t piece_index(double t) const;
  std::vector<double> piece_starts() const;

  OperatorFamily with_certificate(RhoSpec rho) const;
  OperatorFamily with_growth(double c) const;

  // J = (I + eta A(t))^{-1}.
  Point resolvent(double t, double eta, const Point& x) const;
  // Least-norm element of A(t)x; DomainError if x is outside D(A(t)).
  Point minimal_section(double t, const Point& x) const;
  double domain_distance(double t, const Point& x) const;
  // Nearest point of the closure of D(A(t)).
  Point project_domain(double t, const Point& x) const;

 private:
  void check_point(const Point& x, const char* op) const;

  OperatorData data_;
  RhoSpec rho_;
  double growth_c_;
  DykstraOptions dykstra_;
  Eigen::Index dimension_ = 0;
};

struct TimedPoint {
  double t;
  Point x;
};

// Produces (t, x) with x in D(A(t)); radii span a geometric range so that
// large-norm behaviour is exercised.
class DomainSampler {
 public:
  DomainSampler(const OperatorFamily& family, std::uint64_t seed);
  TimedPoint operator()();

 private:
  const OperatorFamily* family_;
  Rng rng_;
  std::vector<double> fixed_times_;
  std::size_t drawn_ = 0;
};

struct H2Report {
  bool pass = true;
  double growth_c = 0.0;
  double max_ratio = 0.0;  // max ||A0(t,x)|| / (1 + ||x||)
  double worst_time = 0.0;
  Point worst_point;
  std::size_t samples = 0;
};

H2Report check_h2(const OperatorFamily& family, const std::function<TimedPoint()>& sampler,
                  std::size_t n);

}  // namespace mdi
