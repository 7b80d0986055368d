#include <gtest/gtest.h>

#include <cmath>

#include "mdi/errors.hpp"
#include "mdi/gronwall.hpp"
#include "mdi/sampling.hpp"

using namespace mdi;

namespace {

// a_{i+1} = alpha_i + beta_i (a_0 + ... + a_{i-1}) + (1 + gamma_i) a_i.
std::vector<double> recursion(double a0, const std::vector<double>& al, const std::vector<double>& be,
                              const std::vector<double>& ga) {
  std::vector<double> a{a0};
  double prefix = 0.0;  // a_0 + ... + a_{i-1}
  for (std::size_t i = 0; i < al.size(); ++i) {
    a.push_back(al[i] + be[i] * prefix + (1.0 + ga[i]) * a[i]);
    prefix += a[i];
  }
  return a;
}

}  // namespace

TEST(GronwallDiscrete, Examples) {
  const std::vector<double> zero(5, 0.0);
  for (double b : gronwall_discrete(2.5, zero, zero, zero)) EXPECT_EQ(b, 2.5);
  const std::vector<double> ones(3, 1.0), z3(3, 0.0);
  EXPECT_EQ(gronwall_discrete(1.0, ones, z3, z3).back(), 4.0);
}

TEST(GronwallDiscrete, RejectsBadInput) {
  const std::vector<double> a{1.0, 2.0}, b{1.0}, neg{-1.0, 0.0};
  EXPECT_THROW(gronwall_discrete(1.0, a, b, a), PreconditionError);
  EXPECT_THROW(gronwall_discrete(-1.0, a, a, a), PreconditionError);
  EXPECT_THROW(gronwall_discrete(1.0, neg, a, a), PreconditionError);
}

TEST(GronwallDiscrete, DominatesTheRecursion) {
  Rng rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<double> al(n), be(n), ga(n);
    for (std::size_t k = 0; k < n; ++k) {
      al[k] = uniform(rng, 0.0, 1.0);
      be[k] = uniform(rng, 0.0, 0.2 / n);
      ga[k] = uniform(rng, 0.0, 0.3);
    }
    const double a0 = uniform(rng, 0.0, 2.0);
    const auto a = recursion(a0, al, be, ga);
    const auto bound = gronwall_discrete(a0, al, be, ga);
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_LE(a[j], bound[j] * (1 + 1e-12)) << trial;
  }
}

TEST(GronwallMeasure, Examples) {
  const Measure leb = Measure::lebesgue(2.0);
  const GronwallMeasureBound flat = gronwall_measure(PiecewiseConstant(0.0), leb, 3.0, 0.0);
  EXPECT_EQ(flat(1.3), 3.0);
  const GronwallMeasureBound classic = gronwall_measure(PiecewiseConstant(1.0), leb, 1.0, 0.0);
  for (double t : {0.0, 0.5, 1.0, 2.0}) EXPECT_NEAR(classic(t), std::exp(t), 1e-14);
}

TEST(GronwallMeasure, AtomConditionIsAPrecondition) {
  const RhoSpec rho(1.0, {0.0}, {0.0}, {{0.5, 0.8}});
  EXPECT_THROW(gronwall_measure(PiecewiseConstant(1.0), Measure::control(rho), 1.0, 0.5),
               PreconditionError);
  EXPECT_NO_THROW(gronwall_measure(PiecewiseConstant(1.0), Measure::control(rho), 1.0, 0.8));
  EXPECT_THROW(gronwall_measure(PiecewiseConstant(1.0), Measure::control(rho), 1.0, 1.0),
               PreconditionError);
  EXPECT_THROW(gronwall_measure(PiecewiseConstant(-1.0), Measure::lebesgue(1.0), 1.0, 0.0),
               PreconditionError);
}

TEST(GronwallMeasure, DominatesFixedPointOfTheIntegralEquation) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const RhoSpec rho(1.0, {0.0, 0.4}, {uniform(rng, 0, 2), uniform(rng, 0, 2)},
                      {{0.3, uniform(rng, 0.05, 0.5)}, {0.77, uniform(rng, 0.05, 0.5)}});
    const Measure mu = Measure::control(rho);
    const PiecewiseConstant g({0.0, 0.6}, {uniform(rng, 0, 1.5), uniform(rng, 0, 1.5)});
    double beta = 0.0;
    for (const Atom& a : rho.atoms()) beta = std::max(beta, mu.atom(a.time) * g(a.time));
    const double alpha = uniform(rng, 0.1, 2.0);
    const GronwallMeasureBound bound = gronwall_measure(g, mu, alpha, beta);

    std::vector<double> grid;
    for (int k = 0; k <= 1000; ++k) grid.push_back(k / 1000.0);
    for (const Atom& a : rho.atoms()) grid.push_back(a.time);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // Forward solve of phi = alpha + int g phi dmu: explicit on the continuous
    // part, implicit at atoms.
    std::vector<double> phi(grid.size());
    phi[0] = alpha;
    double acc = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const double cont = mu.interval({grid[k - 1], grid[k]}) - mu.atom(grid[k]);
      acc += g(grid[k - 1]) * phi[k - 1] * cont;
      const double w = g(grid[k]) * mu.atom(grid[k]);
      phi[k] = (alpha + acc) / (1.0 - w);
      acc += w * phi[k];
    }
    const GronwallCheck check = check_gronwall(bound, grid, phi);
    EXPECT_TRUE(check.pass) << "trial " << trial << " margin " << check.worst_margin;
  }
}
