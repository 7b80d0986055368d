#include <gtest/gtest.h>

#include <cmath>

#include "mdi/errors.hpp"
#include "mdi/measure.hpp"
#include "mdi/sampling.hpp"

using namespace mdi;

namespace {

// Midpoint Riemann sum of the rate plus the jump sum. Returns the value and
// its error bar: each rate discontinuity costs at most |jump| h, plus
// summation rounding.
struct Riemann {
  double value;
  double error;
};

Riemann riemann_rho(const RhoSpec& spec, double t) {
  const int n = 1 << 21;
  const double h = t / n;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += spec.rate((k + 0.5) * h) * h;
  const auto& rates = spec.ac_density().values();
  double variation = 0.0;
  for (std::size_t k = 1; k < rates.size(); ++k) variation += std::abs(rates[k] - rates[k - 1]);
  double jumps = 0.0;
  for (const Atom& a : spec.atoms()) jumps += a.time <= t ? a.mass : 0.0;
  return {sum + jumps, variation * h + n * 1e-16 * (1.0 + sum)};
}

RhoSpec random_spec(Rng& rng) {
  const double T = uniform(rng, 0.5, 3.0);
  std::vector<double> breaks{0.0};
  std::vector<double> rates{uniform(rng, 0.0, 2.0)};
  const int pieces = static_cast<int>(uniform(rng, 0.0, 4.0));
  for (int k = 0; k < pieces; ++k) {
    breaks.push_back(breaks.back() + uniform(rng, 0.05, T / 5));
    rates.push_back(rng() % 3 == 0 ? 0.0 : uniform(rng, 0.0, 3.0));
  }
  while (breaks.back() > T) {
    breaks.pop_back();
    rates.pop_back();
  }
  std::vector<Atom> atoms;
  double t = 0.0;
  while (true) {
    t += uniform(rng, 0.1, T / 2);
    if (t > T) break;
    atoms.push_back({t, uniform(rng, 0.01, 1.0)});
  }
  return {T, breaks, rates, atoms};
}

}  // namespace

TEST(RhoEval, ConstantDensity) {
  const RhoSpec spec(1.0, {0.0}, {1.0}, {});
  EXPECT_DOUBLE_EQ(rho_eval(spec, 0.5), 0.5);
  EXPECT_EQ(rho_eval(spec, 0.0), 0.0);
}

TEST(RhoEval, AtomIsIncludedAtItsTime) {
  const RhoSpec spec(1.0, {0.0}, {0.0}, {{0.5, 0.2}});
  EXPECT_EQ(rho_eval(spec, 0.4), 0.0);
  EXPECT_DOUBLE_EQ(rho_eval(spec, 0.5), 0.2);
  EXPECT_DOUBLE_EQ(spec.left_limit(0.5), 0.0);
}

TEST(RhoEval, DensityPlusAtomMatchesRiemannOracle) {
  const RhoSpec spec(1.0, {0.0}, {2.0}, {{0.3, 0.1}});
  EXPECT_NEAR(rho_eval(spec, 0.3), 0.7, 1e-12);
  const Riemann oracle = riemann_rho(spec, 0.3);
  EXPECT_NEAR(rho_eval(spec, 0.3), oracle.value, oracle.error);
}

TEST(RhoEval, OutsideHorizonIsDomainError) {
  const RhoSpec spec = RhoSpec::zero(1.0);
  EXPECT_THROW(rho_eval(spec, -0.1), DomainError);
  EXPECT_THROW(rho_eval(spec, 1.5), DomainError);
  EXPECT_THROW(lambda_density(spec, 2.0), DomainError);
  EXPECT_THROW(nu_interval(spec, {0.5, 0.2}), DomainError);
}

TEST(RhoSpecValidation, RejectsBadInput) {
  EXPECT_THROW(RhoSpec(0.0, {0.0}, {0.0}, {}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.0}, {-1.0}, {}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.1}, {1.0}, {}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.0, 0.5, 0.5}, {1.0, 1.0, 1.0}, {}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.0}, {0.0}, {{0.0, 1.0}}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.0}, {0.0}, {{1.5, 1.0}}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.0}, {0.0}, {{0.5, 0.0}}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.0}, {0.0}, {{0.5, 1.0}, {0.5, 1.0}}), DomainError);
  EXPECT_THROW(RhoSpec(1.0, {0.0}, {0.0}, {{0.6, 1.0}, {0.5, 1.0}}), DomainError);
}

TEST(RhoSpecValidation, AtomAtHorizonIsAllowed) {
  const RhoSpec spec(1.0, {0.0}, {0.0}, {{1.0, 0.5}});
  EXPECT_DOUBLE_EQ(rho_eval(spec, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(nu_interval(spec, {0.9, 1.0}), 0.6);
}

TEST(NuInterval, Examples) {
  EXPECT_DOUBLE_EQ(nu_interval(RhoSpec::zero(1.0), {0.0, 1.0}), 1.0);
  const RhoSpec spec(1.0, {0.0}, {0.0}, {{0.5, 0.2}});
  EXPECT_NEAR(nu_interval(spec, {0.4, 0.5}), 0.3, 1e-15);
  EXPECT_NEAR(nu_interval(spec, {0.4, 0.5}),
              0.1 + rho_eval(spec, 0.5) - rho_eval(spec, 0.4), 1e-15);
  EXPECT_EQ(nu_interval(spec, {0.5, 0.5}), 0.0);
  EXPECT_EQ(nu_interval(spec, {0.3, 0.3}), 0.0);
}

TEST(NuInterval, AdditiveOverAdjacentIntervals) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const RhoSpec spec = random_spec(rng);
    double pts[3] = {uniform(rng, 0, spec.horizon()), uniform(rng, 0, spec.horizon()),
                     uniform(rng, 0, spec.horizon())};
    std::sort(pts, pts + 3);
    if (trial % 5 == 0 && !spec.atoms().empty()) pts[1] = spec.atoms().front().time;
    std::sort(pts, pts + 3);
    const double whole = nu_interval(spec, {pts[0], pts[2]});
    const double parts = nu_interval(spec, {pts[0], pts[1]}) + nu_interval(spec, {pts[1], pts[2]});
    EXPECT_NEAR(whole, parts, 1e-12);
  }
}

TEST(RhoEval, NondecreasingWithZeroStart) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const RhoSpec spec = random_spec(rng);
    EXPECT_EQ(rho_eval(spec, 0.0), 0.0);
    double prev = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double v = rho_eval(spec, k == 400 ? spec.horizon() : spec.horizon() * k / 400.0);
      EXPECT_GE(v, prev);
      prev = v;
    }
    const Riemann oracle = riemann_rho(spec, spec.horizon());
    EXPECT_NEAR(rho_eval(spec, spec.horizon()), oracle.value, oracle.error);
  }
}

TEST(AtomMass, Examples) {
  const RhoSpec spec(1.0, {0.0}, {0.0}, {{0.5, 0.2}});
  EXPECT_DOUBLE_EQ(atom_mass(spec, 0.5), 0.2);
  EXPECT_EQ(atom_mass(spec, 0.49), 0.0);
  EXPECT_EQ(atom_mass(RhoSpec::zero(1.0), 0.3), 0.0);
}

TEST(AtomMass, EqualsJumpOfRho) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const RhoSpec spec = random_spec(rng);
    for (const Atom& a : spec.atoms()) {
      EXPECT_DOUBLE_EQ(atom_mass(spec, a.time), a.mass);
      EXPECT_NEAR(spec.eval(a.time) - spec.left_limit(a.time), a.mass, 1e-14);
      EXPECT_NEAR(nu_interval(spec, {std::nextafter(a.time, 0.0), a.time}), a.mass, 1e-12);
    }
  }
}

TEST(LambdaDensity, Examples) {
  const RhoSpec atom(1.0, {0.0}, {0.0}, {{0.5, 0.2}});
  EXPECT_EQ(lambda_density(atom, 0.5), 0.0);
  EXPECT_EQ(lambda_density(atom, 0.2), 1.0);
  const RhoSpec rate(1.0, {0.0}, {1.0}, {});
  EXPECT_DOUBLE_EQ(lambda_density(rate, 0.3), 0.5);
}

TEST(LambdaDensity, MatchesShrinkingQuotients) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const RhoSpec spec = random_spec(rng);
    std::vector<double> times{0.0};
    for (const double b : spec.ac_density().breakpoints()) times.push_back(b);
    for (int k = 0; k < 5; ++k) times.push_back(uniform(rng, 0.0, spec.horizon()));
    for (double t : times) {
      if (spec.atom_mass(t) > 0.0 || t >= spec.horizon()) continue;
      double error = 1.0;
      for (double eps = 1e-2; eps > 1e-10; eps *= 0.1) {
        const double right = std::min(spec.horizon(), t + eps);
        // lambda([t, t+eps]) / nu([t, t+eps]); the closed left end adds nu({t}) = 0 here.
        const double q = (right - t) / spec.nu_measure({t, right});
        error = std::abs(q - spec.lambda_density(t));
      }
      EXPECT_LT(error, 1e-6) << "t = " << t;
    }
    for (const Atom& a : spec.atoms()) {
      const double q = 1e-10 / (spec.nu_measure({a.time - 1e-10, a.time}));
      EXPECT_LT(q, 1e-8);
      EXPECT_EQ(spec.lambda_density(a.time), 0.0);
    }
  }
}

TEST(AtomFreeNu, InverseRoundTrip) {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const RhoSpec spec = random_spec(rng);
    const double s = uniform(rng, 0.0, spec.horizon());
    const double total = spec.atom_free_nu(s, spec.horizon());
    const double w = uniform(rng, 0.0, total);
    const double t = spec.atom_free_inverse(s, w);
    EXPECT_NEAR(spec.atom_free_nu(s, t), w, 1e-12);
  }
}

TEST(MeasureIntegrate, AgreesWithRiemannSumAndAtoms) {
  Rng rng(13);
  const PiecewiseConstant g({0.0, 0.3, 0.7}, {1.0, 2.5, 0.5});
  for (int trial = 0; trial < 30; ++trial) {
    const RhoSpec spec = random_spec(rng);
    const Measure mu = Measure::control(spec);
    const double T = spec.horizon();
    const int n = 200000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double t = (k + 0.5) * T / n;
      sum += g(t) * (1.0 + spec.rate(t)) * T / n;
    }
    for (const Atom& a : spec.atoms()) sum += g(a.time) * a.mass;
    EXPECT_NEAR(mu.integrate(g, 0.0, T), sum, 1e-4);
  }
  const RhoSpec spec(1.0, {0.0}, {0.0}, {{0.5, 2.0}});
  EXPECT_DOUBLE_EQ(Measure::stieltjes(spec).integrate(PiecewiseConstant(3.0), 0.0, 1.0), 6.0);
  EXPECT_DOUBLE_EQ(Measure::lebesgue(1.0).integrate(PiecewiseConstant(3.0), 0.0, 0.5), 1.5);
  EXPECT_EQ(Measure::stieltjes(spec).integrate(PiecewiseConstant(3.0), 0.5, 1.0), 0.0);
}
