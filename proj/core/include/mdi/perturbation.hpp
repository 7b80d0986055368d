#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mdi/operators.hpp"
#include "mdi/piecewise.hpp"
#include "mdi/types.hpp"

namespace mdi {

struct ZeroForce {};

struct ConstantForce {
  Point value;
};

// f(x) = L x + b
struct LinearForce {
  Matrix map;
  Point offset;
};

// f_i(x) = scale_i * g_i(x_i) + offset_i, g_i 1-Lipschitz with g_i(0) = 0.
struct CoordinateForce {
  enum class Nonlinearity { Sin, Tanh, Atan, Clip };
  std::vector<Nonlinearity> functions;
  Point scale;
  Point offset;
};

using ForceData = std::variant<ZeroForce, ConstantForce, LinearForce, CoordinateForce>;

// The single-valued perturbation f(t,x) = s(t) * F(x) with a closed-catalog F,
// a piecewise-constant time profile s, and declared constants: growth m for
// ||f(t,x)|| <= m (1 + ||x||) and Lipschitz modulus alpha(t).
class Perturbation {
 public:
  Perturbation(Eigen::Index dimension, ForceData force, double declared_m,
               PiecewiseConstant alpha, PiecewiseConstant time_profile = PiecewiseConstant(1.0));

  static Perturbation zero(Eigen::Index dimension) {
    return {dimension, ZeroForce{}, 0.0, PiecewiseConstant(0.0)};
  }

  Point operator()(double t, const Point& x) const;

  Eigen::Index dimension() const { return dimension_; }
  const ForceData& force() const { return force_; }
  double declared_m() const { return m_; }
  const PiecewiseConstant& alpha() const { return alpha_; }
  const PiecewiseConstant& time_profile() const { return profile_; }
  bool is_zero() const { return std::holds_alternative<ZeroForce>(force_); }
  std::string describe() const;

 private:
  Eigen::Index dimension_;
  ForceData force_;
  double m_;
  PiecewiseConstant alpha_;
  PiecewiseConstant profile_;
};

// Composite midpoint rule for the integral of s -> f(s, u) over [a, b] with
// max(4, ceil((b - a) / eps)) panels.
Point integrate_force(const Perturbation& f, double a, double b, const Point& u, double eps);

struct GrowthAudit {
  bool pass = true;
  double declared_m = 0.0;
  double max_ratio = 0.0;  // max ||f(t,x)|| / (1 + ||x||)
  double worst_time = 0.0;
  std::size_t samples = 0;
};

struct LipschitzAudit {
  bool pass = true;
  double worst_excess = 0.0;  // max of ||f(t,x) - f(t,y)|| - alpha(t) ||x - y||, relative
  double worst_time = 0.0;
  std::size_t samples = 0;
};

GrowthAudit audit_growth(const Perturbation& f, double horizon, std::size_t n, std::uint64_t seed);
LipschitzAudit audit_lipschitz(const Perturbation& f, double horizon, std::size_t n,
                               std::uint64_t seed);

}  // namespace mdi
