#include "mdi/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mdi/errors.hpp"
#include "mdi/sampling.hpp"

namespace mdi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double apply(CoordinateForce::Nonlinearity g, double x) {
  switch (g) {
    case CoordinateForce::Nonlinearity::Sin:
      return std::sin(x);
    case CoordinateForce::Nonlinearity::Tanh:
      return std::tanh(x);
    case CoordinateForce::Nonlinearity::Atan:
      return std::atan(x);
    case CoordinateForce::Nonlinearity::Clip:
      return std::clamp(x, -1.0, 1.0);
  }
  return x;
}

// Probe radii spanning small and large ||x||.
constexpr double kRadii[] = {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};

std::vector<double> audit_times(const Perturbation& f, double horizon, std::size_t n, Rng& rng) {
  std::vector<double> times = f.time_profile().breakpoints();
  for (double b : f.alpha().breakpoints()) times.push_back(b);
  times.push_back(horizon);
  while (times.size() < n) times.push_back(uniform(rng, 0.0, horizon));
  times.resize(n);
  return times;
}

}  // namespace

Perturbation::Perturbation(Eigen::Index dimension, ForceData force, double declared_m,
                           PiecewiseConstant alpha, PiecewiseConstant time_profile)
    : dimension_(dimension), force_(std::move(force)), m_(declared_m), alpha_(std::move(alpha)),
      profile_(std::move(time_profile)) {
  if (dimension <= 0) throw DomainError("perturbation: dimension must be positive");
  if (!(declared_m >= 0.0) || !std::isfinite(declared_m)) {
    throw DomainError("perturbation: m must be nonnegative and finite");
  }
  if (alpha_.min_value() < 0.0) throw DomainError("perturbation: alpha must be nonnegative");
  auto need = [&](Eigen::Index n, const char* what) {
    if (n != dimension) {
      std::ostringstream os;
      os << "perturbation: " << what << " has size " << n << ", expected " << dimension;
      throw DomainError(os.str());
    }
  };
  std::visit(Overloaded{
                 [](const ZeroForce&) {},
                 [&](const ConstantForce& c) { need(c.value.size(), "constant vector"); },
                 [&](const LinearForce& l) {
                   need(l.map.rows(), "linear map rows");
                   need(l.map.cols(), "linear map columns");
                   need(l.offset.size(), "offset");
                 },
                 [&](const CoordinateForce& c) {
                   need(static_cast<Eigen::Index>(c.functions.size()), "function list");
                   need(c.scale.size(), "scale");
                   need(c.offset.size(), "offset");
                 },
             },
             force_);
}

Point Perturbation::operator()(double t, const Point& x) const {
  const double s = profile_(t);
  return std::visit(Overloaded{
                        [&](const ZeroForce&) -> Point { return Point::Zero(dimension_); },
                        [&](const ConstantForce& c) -> Point { return s * c.value; },
                        [&](const LinearForce& l) -> Point { return s * (l.map * x + l.offset); },
                        [&](const CoordinateForce& c) -> Point {
                          Point y(dimension_);
                          for (Eigen::Index i = 0; i < dimension_; ++i) {
                            y(i) = c.scale(i) * apply(c.functions[static_cast<std::size_t>(i)], x(i)) +
                                   c.offset(i);
                          }
                          return s * y;
                        },
                    },
                    force_);
}

std::string Perturbation::describe() const {
  static const char* names[] = {"zero", "constant", "linear", "coordinate"};
  std::ostringstream os;
  os << names[force_.index()] << " (m = " << m_ << ", max alpha = " << alpha_.max_value() << ")";
  return os.str();
}

Point integrate_force(const Perturbation& f, double a, double b, const Point& u, double eps) {
  if (b <= a || f.is_zero()) return Point::Zero(f.dimension());
  const double len = b - a;
  const auto panels = static_cast<std::size_t>(std::max(4.0, std::ceil(len / eps)));
  const double h = len / static_cast<double>(panels);
  Point total = Point::Zero(f.dimension());
  for (std::size_t k = 0; k < panels; ++k) {
    total += f(a + (static_cast<double>(k) + 0.5) * h, u);
  }
  return h * total;
}

GrowthAudit audit_growth(const Perturbation& f, double horizon, std::size_t n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x6A0));
  GrowthAudit report;
  report.declared_m = f.declared_m();
  const std::vector<double> times = audit_times(f, horizon, n, rng);
  for (std::size_t k = 0; k < n; ++k) {
    const Point x = gaussian_point(rng, f.dimension(), kRadii[k % std::size(kRadii)]);
    const double ratio = f(times[k], x).norm() / (1.0 + x.norm());
    ++report.samples;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_time = times[k];
    }
  }
  // Also probe x = 0, where the offset dominates.
  for (double t : f.time_profile().breakpoints()) {
    report.max_ratio = std::max(report.max_ratio, f(t, Point::Zero(f.dimension())).norm());
  }
  report.pass = report.max_ratio <= f.declared_m() * (1.0 + 1e-12) + 1e-15;
  return report;
}

LipschitzAudit audit_lipschitz(const Perturbation& f, double horizon, std::size_t n,
                               std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x119));
  LipschitzAudit report;
  const std::vector<double> times = audit_times(f, horizon, n, rng);
  for (std::size_t k = 0; k < n; ++k) {
    const double radius = kRadii[k % std::size(kRadii)];
    const Point x = gaussian_point(rng, f.dimension(), radius);
    const Point y = x + gaussian_point(rng, f.dimension(), 0.1 * radius);
    const double dx = (x - y).norm();
    if (dx == 0.0) continue;
    const double df = (f(times[k], x) - f(times[k], y)).norm();
    const double allowed = f.alpha()(times[k]) * dx;
    const double excess = (df - allowed) / dx;
    ++report.samples;
    if (excess > report.worst_excess) {
      report.worst_excess = excess;
      report.worst_time = times[k];
    }
  }
  report.pass = report.worst_excess <= 1e-9;
  return report;
}

}  // namespace mdi
