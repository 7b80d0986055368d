#include "mdi/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "mdi/errors.hpp"
#include "mdi/sampling.hpp"
#include "mdi/solver.hpp"

namespace mdi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ShapeFrame domain_frame(const OperatorFamily& family, double t) {
  return std::visit(
      Overloaded{
          [&](const MovingConvexSet& s) { return frame_of(s.shapes[active_piece(s.starts, t)]); },
          [&](const TimeVaryingLinear&) { return ShapeFrame{Point::Zero(family.dimension()), 1.0}; },
          [&](const SeparableSubdifferential&) {
            return ShapeFrame{family.project_domain(t, Point::Zero(family.dimension())), 1.0};
          },
      },
      family.data());
}

// Kink of a catalog function, where the subdifferential is set valued.
std::optional<double> kink(const ScalarConvex& phi, Rng& rng) {
  switch (phi.kind) {
    case ScalarConvex::Kind::Abs:
    case ScalarConvex::Kind::Hinge:
      return 0.0;
    case ScalarConvex::Kind::Indicator:
      return uniform(rng, 0.0, 1.0) < 0.5 ? phi.lower : phi.upper;
    case ScalarConvex::Kind::HalfSquare:
      return std::nullopt;
  }
  return std::nullopt;
}

struct TestTime {
  double t;
  std::size_t cell;
};

}  // namespace

std::vector<Point> ZSampler::operator()(const OperatorFamily& family, double t, const Point& u,
                                        std::uint64_t stream) const {
  static constexpr double kScales[] = {0.01, 0.1, 1.0, 10.0};
  Rng rng(mix_seed(seed_, stream));
  const ShapeFrame frame = domain_frame(family, t);
  const auto* sub = std::get_if<SeparableSubdifferential>(&family.data());
  std::vector<Point> zs;
  zs.reserve(count_ + 1);
  for (std::size_t k = 0; k < count_; ++k) {
    const Point& center = k % 2 == 0 ? u : frame.anchor;
    const double scale = kScales[(k / 2) % std::size(kScales)] * (1.0 + frame.extent);
    Point p = center + gaussian_point(rng, family.dimension(), scale);
    if (sub != nullptr) {
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (uniform(rng, 0.0, 1.0) < 1.0 / 3.0) {
          if (auto x = kink(sub->coordinates[static_cast<std::size_t>(i)], rng)) p(i) = *x;
        }
      }
    }
    zs.push_back(family.project_domain(t, p));
  }
  zs.push_back(family.project_domain(t, u));
  return zs;
}

double default_verification_tol(const ProblemSpec& problem, double eps) {
  return 10.0 * eps * (1.0 + a_priori_bounds(problem).M5);
}

VerificationReport check_inclusion(const Trajectory& traj, const ProblemSpec& problem,
                                   const ZSampler& sampler, double tol) {
  if (traj.dimension() != problem.dimension()) {
    throw DomainError("check_inclusion: trajectory and problem dimensions differ");
  }
  if (traj.horizon() != problem.horizon()) {
    throw DomainError("check_inclusion: trajectory and problem horizons differ");
  }
  const Partition& part = traj.partition();
  const OperatorFamily& family = problem.family();
  const Perturbation& f = problem.perturbation();
  const RhoSpec& rho = problem.rho();

  VerificationReport report;
  report.tol = tol;
  report.seed = sampler.seed();
  report.z_per_time = sampler.count() + 1;
  report.worst_slack = std::numeric_limits<double>::infinity();

  std::vector<TestTime> times;
  times.reserve(part.nodes.size() * (kInteriorTimesPerCell + 1));
  Rng rng(mix_seed(sampler.seed(), 0x7e57));
  for (std::size_t i = 0; i < part.cells(); ++i) {
    const bool jump_cell = part.right_atom[i] > 0.0;
    if (i == 0) {
      if (jump_cell) {
        ++report.skipped_times;
      } else {
        times.push_back({0.0, 0});
      }
    }
    if (jump_cell) {
      report.skipped_times += kInteriorTimesPerCell;
    } else {
      for (std::size_t k = 0; k < kInteriorTimesPerCell; ++k) {
        const double t = uniform(rng, part.nodes[i], part.nodes[i + 1]);
        if (t > part.nodes[i] && t < part.nodes[i + 1]) times.push_back({t, i});
      }
    }
    times.push_back({part.nodes[i + 1], i});
  }
  std::sort(times.begin(), times.end(), [](const TestTime& a, const TestTime& b) { return a.t < b.t; });

  std::vector<Witness> worst_per_time;
  for (std::size_t n = 0; n < times.size(); ++n) {
    const auto [t, cell] = times[n];
    const Point u = traj.at(t);
    const double dist = family.domain_distance(t, u);
    if (dist > report.worst_domain_distance) {
      report.worst_domain_distance = dist;
      report.worst_domain_time = t;
      report.worst_domain_cell = cell;
    }
    Point g = traj.density(t);
    const double dl = rho.lambda_density(t);
    if (dl > 0.0 && !f.is_zero()) g += dl * f(t, u);

    Witness worst;
    worst.slack = std::numeric_limits<double>::infinity();
    for (const Point& z : sampler(family, t, u, n)) {
      const double slack = (family.minimal_section(t, z) + g).dot(z - u);
      if (slack < worst.slack) {
        worst.slack = slack;
        worst.z = z;
      }
    }
    worst.t = t;
    worst.cell = cell;
    if (worst.slack < report.worst_slack) {
      report.worst_slack = worst.slack;
      report.worst_slack_time = t;
    }
    if (worst.slack < 0.0) worst_per_time.push_back(std::move(worst));
  }
  report.test_times = times.size();
  if (times.empty()) report.worst_slack = 0.0;

  std::sort(worst_per_time.begin(), worst_per_time.end(),
            [](const Witness& a, const Witness& b) { return a.slack < b.slack; });
  if (worst_per_time.size() > kMaxWitnesses) worst_per_time.resize(kMaxWitnesses);
  report.witnesses = std::move(worst_per_time);

  for (const Atom& a : rho.atoms()) {
    const Point jumped = family.resolvent(a.time, a.mass, traj.left_limit(a.time));
    report.atom_residuals.push_back({a.time, a.mass, (traj.at(a.time) - jumped).norm()});
  }
  report.pass = report.worst_slack >= -tol && report.worst_domain_distance <= tol;
  return report;
}

VerificationReport check_uniqueness_bound(const Trajectory& u, const Trajectory& v,
                                          const PiecewiseConstant& alpha, double tol) {
  if (u.horizon() != v.horizon()) throw DomainError("check_uniqueness_bound: horizons differ");
  if (u.dimension() != v.dimension()) throw DomainError("check_uniqueness_bound: dimensions differ");
  UniquenessReport uq;
  uq.initial_sq_gap = (u.at(0.0) - v.at(0.0)).squaredNorm();
  uq.factor = std::exp(2.0 * alpha.integral(0.0, u.horizon()));
  for (double t : merged_nodes(u, v)) {
    const double sq = (u.at(t) - v.at(t)).squaredNorm();
    if (sq > uq.sup_sq_gap) {
      uq.sup_sq_gap = sq;
      uq.worst_time = t;
    }
  }
  uq.margin = uq.initial_sq_gap * uq.factor + tol - uq.sup_sq_gap;
  uq.pass = uq.margin >= 0.0;

  VerificationReport report;
  report.tol = tol;
  report.pass = uq.pass;
  report.uniqueness = uq;
  return report;
}

std::string format_verification(const VerificationReport& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "verification " << (r.pass ? "PASS" : "FAIL") << " tol " << r.tol << " seed " << r.seed
     << "\n";
  if (r.test_times > 0) {
    os << "  test times " << r.test_times << " (skipped " << r.skipped_times
       << " inside jump cells), z per time " << r.z_per_time << "\n";
    os << "  worst slack " << r.worst_slack << " at t = " << r.worst_slack_time << "\n";
    os << "  worst domain distance " << r.worst_domain_distance << " at t = " << r.worst_domain_time
       << " (cell " << r.worst_domain_cell << ")\n";
  }
  for (const AtomResidual& a : r.atom_residuals) {
    os << "  atom t = " << a.time << " mass " << a.mass << ": jump residual " << a.residual << "\n";
  }
  if (r.uniqueness) {
    const UniquenessReport& q = *r.uniqueness;
    os << "  uniqueness " << (q.pass ? "PASS" : "FAIL") << ": sup ||u-v||^2 = " << q.sup_sq_gap
       << " at t = " << q.worst_time << ", bound " << q.initial_sq_gap << " * " << q.factor
       << ", margin " << q.margin << "\n";
  }
  for (const Witness& w : r.witnesses) {
    os << "  witness t = " << w.t << " cell " << w.cell << " slack " << w.slack << " z = (";
    for (Eigen::Index i = 0; i < w.z.size(); ++i) os << (i ? ", " : "") << w.z(i);
    os << ")\n";
  }
  return os.str();
}

}  // namespace mdi
