#include "mdi/vladimirov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

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

void sample_set(const Shape& shape, std::size_t base_points, Rng& rng, GraphSample& out) {
  const ShapeFrame frame = frame_of(shape);
  const Eigen::Index d = frame.anchor.size();
  const double spread = frame.extent + 1.0;
  for (std::size_t k = 0; k < base_points; ++k) {
    const Point probe = frame.anchor + gaussian_point(rng, d, 1.5 * spread);
    const Point p = project(shape, probe);
    const Point gap = probe - p;
    const double len = gap.norm();
    if (len == 0.0) {
      out.pairs.push_back({p, Point::Zero(d)});
      continue;
    }
    const Point normal = gap / len;
    for (double s : normal_magnitudes()) out.pairs.push_back({p, s * normal});
  }
}

}  // namespace

const std::vector<double>& normal_magnitudes() {
  static const std::vector<double> grid = [] {
    std::vector<double> g{0.0};
    for (int e = -2; e <= 4; ++e) g.push_back(std::pow(10.0, e));
    return g;
  }();
  return grid;
}

GraphSample sample_graph(const OperatorFamily& family, double t, std::size_t base_points,
                         std::uint64_t seed) {
  Rng rng(mix_seed(seed, family.piece_index(t)));
  const Eigen::Index d = family.dimension();
  GraphSample out;
  std::visit(
      Overloaded{
          [&](const MovingConvexSet& s) {
            sample_set(s.shapes[active_piece(s.starts, t)], base_points, rng, out);
          },
          [&](const TimeVaryingLinear& l) {
            const Matrix& q = l.matrices[active_piece(l.starts, t)];
            out.pairs.push_back({Point::Zero(d), Point::Zero(d)});
            static constexpr double kScales[] = {0.1, 1.0, 10.0};
            for (std::size_t k = 1; k < base_points; ++k) {
              const Point x = gaussian_point(rng, d, kScales[k % 3]);
              out.pairs.push_back({x, q * x});
            }
          },
          [&](const SeparableSubdifferential& s) {
            std::uniform_int_distribution<int> pick(0, 2);
            for (std::size_t k = 0; k < base_points; ++k) {
              Point x(d);
              for (Eigen::Index i = 0; i < d; ++i) {
                const ScalarConvex& phi = s.coordinates[static_cast<std::size_t>(i)];
                const bool snap = pick(rng) == 0;
                double v = 2.0 * gaussian_point(rng, 1)(0);
                switch (phi.kind) {
                  case ScalarConvex::Kind::Abs:
                  case ScalarConvex::Kind::Hinge:
                    if (snap) v = 0.0;
                    break;
                  case ScalarConvex::Kind::HalfSquare:
                    break;
                  case ScalarConvex::Kind::Indicator:
                    v = snap ? (pick(rng) == 0 ? phi.lower : phi.upper) : phi.project_domain(v);
                    break;
                }
                x(i) = v;
              }
              Point least(d);
              for (Eigen::Index i = 0; i < d; ++i) {
                least(i) = s.coordinates[static_cast<std::size_t>(i)].least_subgradient(x(i));
              }
              out.pairs.push_back({x, least});
              for (double mag : normal_magnitudes()) {
                if (mag == 0.0) continue;
                Point y(d);
                for (Eigen::Index i = 0; i < d; ++i) {
                  const auto [lo, hi] = s.coordinates[static_cast<std::size_t>(i)].subdifferential(x(i));
                  const bool take_low = pick(rng) == 0;
                  const double end = take_low ? lo : hi;
                  y(i) = std::isinf(end) ? (end < 0.0 ? -mag : mag) : end;
                }
                out.pairs.push_back({x, y});
              }
            }
          },
      },
      family.data());
  return out;
}

double monotonicity_violation(const GraphSample& sample) {
  double worst = 0.0;
  const auto& p = sample.pairs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const double v = (p[i].y - p[j].y).dot(p[i].x - p[j].x);
      worst = std::min(worst, v);
    }
  }
  return worst;
}

DisEstimate dis_lower_bound(const GraphSample& a, const GraphSample& b) {
  if (a.pairs.empty() || b.pairs.empty()) {
    throw PreconditionError("dis_lower_bound: graph samples must be nonempty");
  }
  std::vector<double> b_norms(b.pairs.size());
  for (std::size_t j = 0; j < b.pairs.size(); ++j) b_norms[j] = b.pairs[j].y.norm();

  DisEstimate best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    const GraphPair& pa = a.pairs[i];
    const double na = pa.y.norm();
    for (std::size_t j = 0; j < b.pairs.size(); ++j) {
      const GraphPair& pb = b.pairs[j];
      // Written so that swapping (a, b) yields bit-identical terms.
      const double num = (pa.y - pb.y).dot(pb.x - pa.x);
      const double q = num / (1.0 + (na + b_norms[j]));
      if (q > best.value) best = {q, i, j};
    }
  }
  return best;
}

SymmetryReport symmetry_check(const GraphSample& a, const GraphSample& b) {
  SymmetryReport r;
  r.forward = dis_lower_bound(a, b).value;
  r.backward = dis_lower_bound(b, a).value;
  r.equal = r.forward == r.backward;
  return r;
}

std::vector<std::pair<double, double>> h1_time_pairs(const OperatorFamily& family,
                                                     std::size_t random_times,
                                                     std::uint64_t seed) {
  const double horizon = family.horizon();
  const double nudge = 1e-7 * horizon;
  std::vector<double> times{0.0, horizon};
  auto add_straddle = [&](double tau) {
    times.push_back(tau);
    if (tau - nudge > 0.0) times.push_back(tau - nudge);
  };
  for (double tau : family.piece_starts()) add_straddle(tau);
  for (const Atom& a : family.rho_certificate().atoms()) add_straddle(a.time);
  Rng rng(mix_seed(seed, 0xA11D17));
  for (std::size_t k = 0; k < random_times; ++k) times.push_back(uniform(rng, 0.0, horizon));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = i + 1; j < times.size(); ++j) pairs.emplace_back(times[i], times[j]);
  }
  return pairs;
}

H1Report audit_h1(const OperatorFamily& family,
                  const std::vector<std::pair<double, double>>& time_pairs,
                  std::size_t samples_per_operator, std::uint64_t seed) {
  std::map<std::size_t, GraphSample> cache;
  auto sample_at = [&](double t) -> const GraphSample& {
    const std::size_t piece = family.piece_index(t);
    auto it = cache.find(piece);
    if (it == cache.end()) {
      it = cache.emplace(piece, sample_graph(family, t, samples_per_operator, seed)).first;
    }
    return it->second;
  };
  // dis only depends on the piece pair; memoise it too.
  std::map<std::pair<std::size_t, std::size_t>, double> dis_cache;

  H1Report report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  const RhoSpec& rho = family.rho_certificate();
  for (const auto& [s, t] : time_pairs) {
    if (!(s < t)) continue;
    const auto key = std::pair{family.piece_index(t), family.piece_index(s)};
    auto it = dis_cache.find(key);
    if (it == dis_cache.end()) {
      it = dis_cache.emplace(key, dis_lower_bound(sample_at(t), sample_at(s)).value).first;
    }
    const double dis = it->second;
    const double increment = rho.eval(t) - rho.eval(s);
    const double margin = increment - dis;
    ++report.pairs_checked;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_s = s;
      report.worst_t = t;
    }
    if (dis > increment + kH1Slack) report.violations.push_back({s, t, dis, increment});
  }
  report.pass = report.violations.empty();
  if (report.pairs_checked == 0) report.worst_margin = 0.0;
  return report;
}

}  // namespace mdi
