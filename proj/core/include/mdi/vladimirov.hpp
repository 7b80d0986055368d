#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mdi/operators.hpp"

namespace mdi {

struct GraphPair {
  Point x;
  Point y;  // y in A(x)
};

struct GraphSample {
  std::vector<GraphPair> pairs;
};

// Normal magnitudes used for set boundaries and unbounded subdifferentials:
// zero and a geometric grid up to 1e4.
const std::vector<double>& normal_magnitudes();

// Structured sample of Gr(A(t)). `base_points` probe points are drawn; the
// stream is seeded from (seed, piece index) so equal operators get equal
// samples.
GraphSample sample_graph(const OperatorFamily& family, double t, std::size_t base_points,
                         std::uint64_t seed);

// Most negative <y_i - y_j, x_i - x_j> over the sample (>= 0 for monotone A).
double monotonicity_violation(const GraphSample& sample);

struct DisEstimate {
  double value = 0.0;
  std::size_t a_index = 0;
  std::size_t b_index = 0;
};

// max <y - y', x' - x> / (1 + ||y|| + ||y'||) over (x,y) in A, (x',y') in B.
DisEstimate dis_lower_bound(const GraphSample& a, const GraphSample& b);

struct SymmetryReport {
  double forward = 0.0;
  double backward = 0.0;
  bool equal = false;
};
SymmetryReport symmetry_check(const GraphSample& a, const GraphSample& b);

struct H1Violation {
  double s;
  double t;
  double dis;
  double increment;  // rho(t) - rho(s)
};

struct H1Report {
  bool pass = true;
  double worst_margin = 0.0;  // min over pairs of increment - dis
  double worst_s = 0.0;
  double worst_t = 0.0;
  std::size_t pairs_checked = 0;
  std::vector<H1Violation> violations;
};

inline constexpr double kH1Slack = 1e-8;

// Times straddling every piece change and atom, plus `random_times` uniform
// draws; returns all ordered pairs s < t.
std::vector<std::pair<double, double>> h1_time_pairs(const OperatorFamily& family,
                                                     std::size_t random_times,
                                                     std::uint64_t seed);

H1Report audit_h1(const OperatorFamily& family,
                  const std::vector<std::pair<double, double>>& time_pairs,
                  std::size_t samples_per_operator, std::uint64_t seed);

}  // namespace mdi
