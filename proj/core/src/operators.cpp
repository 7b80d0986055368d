#include "mdi/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mdi/errors.hpp"
#include "mdi/piecewise.hpp"

namespace mdi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

MovingConvexSet MovingConvexSet::translating(const Shape& base, std::vector<double> starts,
                                             const std::vector<Point>& translations) {
  if (starts.size() != translations.size()) {
    throw DomainError("translating set: one translation per piece start is required");
  }
  MovingConvexSet set{std::move(starts), {}};
  for (const Point& v : translations) set.shapes.push_back(translated(base, v));
  return set;
}

double ScalarConvex::prox(double eta, double x) const {
  switch (kind) {
    case Kind::Abs:
      return sign(x) * std::max(std::abs(x) - eta, 0.0);
    case Kind::HalfSquare:
      return x / (1.0 + eta * q);
    case Kind::Indicator:
      return std::clamp(x, lower, upper);
    case Kind::Hinge:
      if (x > eta) return x - eta;
      if (x >= 0.0) return 0.0;
      return x;
  }
  return x;
}

double ScalarConvex::least_subgradient(double x) const {
  switch (kind) {
    case Kind::Abs:
      return sign(x);
    case Kind::HalfSquare:
      return q * x;
    case Kind::Indicator:
      return 0.0;
    case Kind::Hinge:
      return x > 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

std::pair<double, double> ScalarConvex::subdifferential(double x) const {
  switch (kind) {
    case Kind::Abs:
      if (x == 0.0) return {-1.0, 1.0};
      return {sign(x), sign(x)};
    case Kind::HalfSquare:
      return {q * x, q * x};
    case Kind::Indicator: {
      const double lo = (x <= lower) ? -kInf : 0.0;
      const double hi = (x >= upper) ? kInf : 0.0;
      return {lo, hi};
    }
    case Kind::Hinge:
      if (x == 0.0) return {0.0, 1.0};
      return x > 0.0 ? std::pair{1.0, 1.0} : std::pair{0.0, 0.0};
  }
  return {0.0, 0.0};
}

double ScalarConvex::domain_distance(double x) const {
  if (kind != Kind::Indicator) return 0.0;
  return std::abs(x - std::clamp(x, lower, upper));
}

double ScalarConvex::project_domain(double x) const {
  return kind == Kind::Indicator ? std::clamp(x, lower, upper) : x;
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::MovingConvexSet:
      return "moving_convex_set";
    case OperatorKind::TimeVaryingLinear:
      return "time_varying_linear";
    case OperatorKind::SeparableSubdifferential:
      return "separable_subdifferential";
  }
  return "unknown";
}

OperatorFamily::OperatorFamily(OperatorData data, RhoSpec rho_certificate, double growth_c,
                               DykstraOptions dykstra)
    : data_(std::move(data)), rho_(std::move(rho_certificate)), growth_c_(growth_c),
      dykstra_(dykstra) {
  if (!(growth_c >= 0.0) || !std::isfinite(growth_c)) {
    throw DomainError("operator: growth constant c must be nonnegative and finite");
  }
  const double horizon = rho_.horizon();
  auto check_starts = [&](const std::vector<double>& starts, std::size_t n, const char* what) {
    require_piece_starts(starts, what);
    if (starts.size() != n) throw DomainError(std::string(what) + ": one piece per start");
    if (starts.back() > horizon) throw DomainError(std::string(what) + ": piece start beyond T");
  };
  std::visit(Overloaded{
                 [&](const MovingConvexSet& s) {
                   check_starts(s.starts, s.shapes.size(), "moving convex set");
                   dimension_ = shape_dimension(s.shapes.front());
                   for (const Shape& shape : s.shapes) {
                     validate_shape(shape);
                     if (shape_dimension(shape) != dimension_) {
                       throw DomainError("moving convex set: pieces differ in dimension");
                     }
                   }
                 },
                 [&](const TimeVaryingLinear& l) {
                   check_starts(l.starts, l.matrices.size(), "time-varying linear operator");
                   dimension_ = l.matrices.front().rows();
                   for (const Matrix& q : l.matrices) {
                     if (q.rows() != dimension_ || q.cols() != dimension_ || dimension_ == 0) {
                       throw DomainError("time-varying linear operator: matrices must be d x d");
                     }
                     const Matrix sym = 0.5 * (q + q.transpose());
                     const double lowest =
                         Eigen::SelfAdjointEigenSolver<Matrix>(sym).eigenvalues().minCoeff();
                     if (lowest < -1e-12) {
                       std::ostringstream os;
                       os << "time-varying linear operator: piece is not monotone (symmetric part "
                             "has eigenvalue "
                          << lowest << ")";
                       throw DomainError(os.str());
                     }
                   }
                 },
                 [&](const SeparableSubdifferential& s) {
                   if (s.coordinates.empty()) throw DomainError("subdifferential: no coordinates");
                   dimension_ = static_cast<Eigen::Index>(s.coordinates.size());
                   for (const ScalarConvex& phi : s.coordinates) {
                     if (phi.kind == ScalarConvex::Kind::HalfSquare && !(phi.q >= 0.0)) {
                       throw DomainError("subdifferential: half_square needs q >= 0");
                     }
                     if (phi.kind == ScalarConvex::Kind::Indicator && !(phi.lower <= phi.upper)) {
                       throw DomainError("subdifferential: indicator needs lower <= upper");
                     }
                   }
                 },
             },
             data_);
}

OperatorKind OperatorFamily::kind() const {
  return static_cast<OperatorKind>(data_.index());
}

std::size_t OperatorFamily::piece_index(double t) const {
  return std::visit(Overloaded{
                        [&](const MovingConvexSet& s) { return active_piece(s.starts, t); },
                        [&](const TimeVaryingLinear& l) { return active_piece(l.starts, t); },
                        [](const SeparableSubdifferential&) { return std::size_t{0}; },
                    },
                    data_);
}

std::vector<double> OperatorFamily::piece_starts() const {
  return std::visit(Overloaded{
                        [](const MovingConvexSet& s) { return s.starts; },
                        [](const TimeVaryingLinear& l) { return l.starts; },
                        [](const SeparableSubdifferential&) { return std::vector<double>{0.0}; },
                    },
                    data_);
}

OperatorFamily OperatorFamily::with_certificate(RhoSpec rho) const {
  return {data_, std::move(rho), growth_c_, dykstra_};
}

OperatorFamily OperatorFamily::with_growth(double c) const { return {data_, rho_, c, dykstra_}; }

void OperatorFamily::check_point(const Point& x, const char* op) const {
  if (x.size() != dimension_) {
    std::ostringstream os;
    os << op << ": point has dimension " << x.size() << ", operator has " << dimension_;
    throw DomainError(os.str());
  }
}

Point OperatorFamily::resolvent(double t, double eta, const Point& x) const {
  check_point(x, "resolvent");
  if (!(eta > 0.0)) throw DomainError("resolvent: eta must be positive");
  return std::visit(
      Overloaded{
          [&](const MovingConvexSet& s) -> Point {
            return project(s.shapes[active_piece(s.starts, t)], x, dykstra_);
          },
          [&](const TimeVaryingLinear& l) -> Point {
            const Matrix& q = l.matrices[active_piece(l.starts, t)];
            const Matrix system = Matrix::Identity(dimension_, dimension_) + eta * q;
            Eigen::PartialPivLU<Matrix> lu(system);
            const double rcond = lu.rcond();
            if (!(rcond > 1e-13)) {
              std::ostringstream os;
              os << "resolvent: (I + eta Q) is ill-conditioned (rcond " << rcond << ")";
              throw NumericalError(os.str());
            }
            Point y = lu.solve(x);
            const double residual = (system * y - x).norm();
            if (!(residual <= 1e-9 * (1.0 + x.norm()))) {
              throw NumericalError("resolvent: linear solve residual above tolerance");
            }
            return y;
          },
          [&](const SeparableSubdifferential& s) -> Point {
            Point y(dimension_);
            for (Eigen::Index i = 0; i < dimension_; ++i) {
              y(i) = s.coordinates[static_cast<std::size_t>(i)].prox(eta, x(i));
            }
            return y;
          },
      },
      data_);
}

double OperatorFamily::domain_distance(double t, const Point& x) const {
  check_point(x, "domain_distance");
  return std::visit(
      Overloaded{
          [&](const MovingConvexSet& s) {
            return distance_to(s.shapes[active_piece(s.starts, t)], x, dykstra_);
          },
          [](const TimeVaryingLinear&) { return 0.0; },
          [&](const SeparableSubdifferential& s) {
            double sq = 0.0;
            for (Eigen::Index i = 0; i < dimension_; ++i) {
              const double d = s.coordinates[static_cast<std::size_t>(i)].domain_distance(x(i));
              sq += d * d;
            }
            return std::sqrt(sq);
          },
      },
      data_);
}

Point OperatorFamily::project_domain(double t, const Point& x) const {
  check_point(x, "project_domain");
  return std::visit(
      Overloaded{
          [&](const MovingConvexSet& s) -> Point {
            return project(s.shapes[active_piece(s.starts, t)], x, dykstra_);
          },
          [&](const TimeVaryingLinear&) -> Point { return x; },
          [&](const SeparableSubdifferential& s) -> Point {
            Point y(dimension_);
            for (Eigen::Index i = 0; i < dimension_; ++i) {
              y(i) = s.coordinates[static_cast<std::size_t>(i)].project_domain(x(i));
            }
            return y;
          },
      },
      data_);
}

Point OperatorFamily::minimal_section(double t, const Point& x) const {
  check_point(x, "minimal_section");
  const double dist = domain_distance(t, x);
  if (dist > kDomainTolerance) {
    std::ostringstream os;
    os << "minimal_section: point is outside D(A(" << t << ")) at distance " << dist;
    throw DomainError(os.str());
  }
  return std::visit(
      Overloaded{
          [&](const MovingConvexSet&) -> Point { return Point::Zero(dimension_); },
          [&](const TimeVaryingLinear& l) -> Point {
            return l.matrices[active_piece(l.starts, t)] * x;
          },
          [&](const SeparableSubdifferential& s) -> Point {
            Point y(dimension_);
            for (Eigen::Index i = 0; i < dimension_; ++i) {
              y(i) = s.coordinates[static_cast<std::size_t>(i)].least_subgradient(x(i));
            }
            return y;
          },
      },
      data_);
}

DomainSampler::DomainSampler(const OperatorFamily& family, std::uint64_t seed)
    : family_(&family), rng_(seed) {
  fixed_times_ = family.piece_starts();
  fixed_times_.push_back(family.horizon());
}

TimedPoint DomainSampler::operator()() {
  static constexpr double kRadii[] = {0.1, 1.0, 10.0, 100.0, 1000.0};
  const double t = drawn_ < fixed_times_.size() ? fixed_times_[drawn_]
                                                : uniform(rng_, 0.0, family_->horizon());
  const double radius = kRadii[drawn_ % std::size(kRadii)];
  ++drawn_;
  const Point probe = gaussian_point(rng_, family_->dimension(), radius);
  return {t, family_->project_domain(t, probe)};
}

H2Report check_h2(const OperatorFamily& family, const std::function<TimedPoint()>& sampler,
                  std::size_t n) {
  if (n == 0) throw PreconditionError("check_h2: at least one sample is required");
  H2Report report;
  report.growth_c = family.growth_c();
  report.worst_point = Point::Zero(family.dimension());
  for (std::size_t k = 0; k < n; ++k) {
    const TimedPoint s = sampler();
    const double ratio = family.minimal_section(s.t, s.x).norm() / (1.0 + s.x.norm());
    ++report.samples;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_time = s.t;
      report.worst_point = s.x;
    }
  }
  report.pass = report.max_ratio <= family.growth_c() * (1.0 + 1e-12) + 1e-15;
  return report;
}

}  // namespace mdi
