#include <gtest/gtest.h>

#include <cmath>

#include "../support/fixtures.hpp"
#include "mdi/errors.hpp"
#include "mdi/operators.hpp"
#include "mdi/vladimirov.hpp"

using namespace mdi;
using namespace mdi::testing;

namespace {

// Solves y + eta * d phi(y) ∋ x by bisection on the monotone map y -> y + eta g(y).
double bisection_prox(const ScalarConvex& phi, double eta, double x) {
  auto excess = [&](double y) {
    const auto [lo, hi] = phi.subdifferential(y);
    // sign of (y + eta*[lo,hi]) - x: negative if the whole set is below x.
    if (y + eta * hi < x) return -1;
    if (y + eta * lo > x) return 1;
    return 0;
  };
  double a = -1e6, b = 1e6;
  if (phi.kind == ScalarConvex::Kind::Indicator) {
    a = phi.lower;
    b = phi.upper;
  }
  for (int k = 0; k < 200; ++k) {
    const double m = 0.5 * (a + b);
    const int s = excess(m);
    if (s == 0) return m;
    (s < 0 ? a : b) = m;
  }
  return 0.5 * (a + b);
}

std::vector<OperatorFamily> catalog() {
  std::vector<OperatorFamily> out;
  const RhoSpec zero = RhoSpec::zero(1.0);
  out.push_back(moving_half_line({0.0, 0.5}, {0.0, 2.0}, RhoSpec(1.0, {0.0}, {0.0}, {{0.5, 2.0}})));
  out.emplace_back(MovingConvexSet::fixed(Box{vec({0.0, 0.0}), vec({1.0, 1.0})}), zero, 0.0);
  out.emplace_back(MovingConvexSet::translating(Ball{vec({0.0, 0.0, 0.0}), 1.0}, {0.0, 0.3},
                                                {vec({0, 0, 0}), vec({1, 0, 0})}),
                   RhoSpec(1.0, {0.0}, {0.0}, {{0.3, 1.0}}), 0.0);
  Polyhedron tri{{{vec({1, 0}), 0.0}, {vec({0, 1}), 0.0}, {vec({-1, -1}), -1.0}}};
  out.emplace_back(MovingConvexSet::fixed(tri), zero, 0.0);
  out.push_back(static_linear(Matrix::Identity(2, 2), zero, 1.0));
  Matrix skew(2, 2);
  skew << 1.0, 2.0, -2.0, 0.5;
  out.push_back(static_linear(skew, zero, 2.5));
  out.emplace_back(SeparableSubdifferential{{ScalarConvex::abs(), ScalarConvex::half_square(2.0),
                                             ScalarConvex::indicator(-1.0, 1.0),
                                             ScalarConvex::hinge()}},
                   zero, 2.0);
  return out;
}

}  // namespace

TEST(Resolvent, Examples) {
  const OperatorFamily line = moving_half_line({0.0}, {0.0}, RhoSpec::zero(1.0));
  EXPECT_EQ(line.resolvent(0.3, 1.0, vec1(-1.0))(0), 0.0);
  EXPECT_EQ(line.resolvent(0.3, 7.0, vec1(-1.0))(0), 0.0);
  const OperatorFamily id = static_linear(Matrix::Identity(1, 1), RhoSpec::zero(1.0), 1.0);
  EXPECT_DOUBLE_EQ(id.resolvent(0.0, 1.0, vec1(2.0))(0), 1.0);
  const OperatorFamily abs(SeparableSubdifferential{{ScalarConvex::abs()}}, RhoSpec::zero(1.0), 1.0);
  EXPECT_EQ(abs.resolvent(0.0, 0.5, vec1(0.2))(0), 0.0);
  EXPECT_NEAR(bisection_prox(ScalarConvex::abs(), 0.5, 0.2), 0.0, 1e-12);
}

TEST(Resolvent, ScalarProxMatchesBisectionOracle) {
  Rng rng(21);
  const ScalarConvex funcs[] = {ScalarConvex::abs(), ScalarConvex::half_square(3.0),
                                ScalarConvex::indicator(-0.5, 2.0), ScalarConvex::hinge()};
  for (int trial = 0; trial < 2000; ++trial) {
    const ScalarConvex& phi = funcs[trial % 4];
    const double eta = std::exp(uniform(rng, -4.0, 3.0));
    const double x = uniform(rng, -10.0, 10.0);
    EXPECT_NEAR(phi.prox(eta, x), bisection_prox(phi, eta, x), 1e-9) << trial;
  }
}

TEST(Resolvent, RejectsBadArguments) {
  const OperatorFamily id = static_linear(Matrix::Identity(2, 2), RhoSpec::zero(1.0), 1.0);
  EXPECT_THROW(id.resolvent(0.0, 0.0, vec({1, 2})), DomainError);
  EXPECT_THROW(id.resolvent(0.0, -1.0, vec({1, 2})), DomainError);
  EXPECT_THROW(id.resolvent(0.0, 1.0, vec1(1.0)), DomainError);
}

TEST(Resolvent, IllConditionedLinearSolveIsNumericalError) {
  Matrix q = Matrix::Zero(2, 2);
  q(0, 0) = 1.0;
  const OperatorFamily family = static_linear(q, RhoSpec::zero(1.0), 1.0);
  EXPECT_NO_THROW(family.resolvent(0.0, 1.0, vec({1, 1})));
  EXPECT_THROW(family.resolvent(0.0, 1e15, vec({1, 1})), NumericalError);
}

TEST(Resolvent, PolyhedronWithoutIterationsIsConvergenceError) {
  Polyhedron tri{{{vec({1, 0}), 0.0}, {vec({0, 1}), 0.0}, {vec({-1, -1}), -1.0}}};
  const OperatorFamily family(MovingConvexSet::fixed(tri), RhoSpec::zero(1.0), 0.0,
                              DykstraOptions{0, 1e-10});
  try {
    family.resolvent(0.0, 1.0, vec({3.0, 2.5}));
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.attained_tolerance(), 0.0);
  }
}

TEST(Resolvent, PolyhedronMatchesBruteForceProjection) {
  Polyhedron tri{{{vec({1, 0}), 0.0}, {vec({0, 1}), 0.0}, {vec({-1, -1}), -1.0}}};
  const Shape shape = tri;
  Rng rng(4);
  const Point vertices[] = {vec({0, 0}), vec({1, 0}), vec({0, 1})};
  for (int trial = 0; trial < 500; ++trial) {
    const Point x = gaussian_point(rng, 2, 2.0);
    // Oracle: best feasible candidate among x, face-line projections and vertices.
    std::vector<Point> cands{x, vertices[0], vertices[1], vertices[2]};
    for (const HalfSpace& h : tri.faces) {
      cands.push_back(x + ((h.offset - h.normal.dot(x)) / h.normal.squaredNorm()) * h.normal);
    }
    double best = 1e300;
    for (const Point& c : cands) {
      bool feasible = true;
      for (const HalfSpace& h : tri.faces) feasible &= h.normal.dot(c) >= h.offset - 1e-12;
      if (feasible) best = std::min(best, (c - x).norm());
    }
    EXPECT_NEAR((project(shape, x) - x).norm(), best, 1e-9);
  }
}

TEST(MinimalSection, Examples) {
  const OperatorFamily line = moving_half_line({0.0}, {0.0}, RhoSpec::zero(1.0));
  EXPECT_EQ(line.minimal_section(0.0, vec1(3.0)).norm(), 0.0);
  EXPECT_EQ(line.minimal_section(0.0, vec1(0.0)).norm(), 0.0);
  const OperatorFamily two = static_linear(2.0 * Matrix::Identity(2, 2), RhoSpec::zero(1.0), 2.0);
  EXPECT_EQ(two.minimal_section(0.0, vec({1, 0})), vec({2, 0}));
  const OperatorFamily abs(SeparableSubdifferential{{ScalarConvex::abs()}}, RhoSpec::zero(1.0), 1.0);
  EXPECT_EQ(abs.minimal_section(0.0, vec1(0.0))(0), 0.0);
  EXPECT_EQ(abs.minimal_section(0.0, vec1(-2.0))(0), -1.0);
}

TEST(MinimalSection, OutsideDomainReportsDistance) {
  const OperatorFamily line = moving_half_line({0.0}, {0.0}, RhoSpec::zero(1.0));
  try {
    line.minimal_section(0.0, vec1(-0.25));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("0.25"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(line.minimal_section(0.0, vec1(-1e-10)));
}

TEST(DomainDistance, Examples) {
  const OperatorFamily ball(MovingConvexSet::fixed(Ball{vec({0, 0}), 1.0}), RhoSpec::zero(1.0), 0.0);
  EXPECT_DOUBLE_EQ(ball.domain_distance(0.0, vec({2, 0})), 1.0);
  const OperatorFamily lin = static_linear(Matrix::Identity(2, 2), RhoSpec::zero(1.0), 1.0);
  EXPECT_EQ(lin.domain_distance(0.5, vec({1e6, -3})), 0.0);
  const OperatorFamily box(MovingConvexSet::fixed(Box{vec({0, 0}), vec({1, 1})}), RhoSpec::zero(1.0), 0.0);
  EXPECT_DOUBLE_EQ(box.domain_distance(0.0, vec({2, 0.5})), 1.0);
}

TEST(OperatorFamily, RejectsNonMonotoneAndMalformedData) {
  Matrix bad(2, 2);
  bad << 1.0, 0.0, 0.0, -0.1;
  EXPECT_THROW(static_linear(bad, RhoSpec::zero(1.0), 1.0), DomainError);
  EXPECT_THROW(static_linear(Matrix::Identity(2, 2), RhoSpec::zero(1.0), -1.0), DomainError);
  EXPECT_THROW(OperatorFamily(MovingConvexSet{{0.0, 2.0}, {half_line(0), half_line(1)}},
                              RhoSpec::zero(1.0), 0.0),
               DomainError);
  Polyhedron empty{{{vec({1, 0}), 1.0}, {vec({-1, 0}), 0.0}}};
  EXPECT_THROW(OperatorFamily(MovingConvexSet::fixed(empty), RhoSpec::zero(1.0), 0.0), DomainError);
  EXPECT_THROW(OperatorFamily(MovingConvexSet::fixed(Box{vec({1, 0}), vec({0, 1})}),
                              RhoSpec::zero(1.0), 0.0),
               DomainError);
}

TEST(CheckH2, Examples) {
  const OperatorFamily line = moving_half_line({0.0}, {0.0}, RhoSpec::zero(1.0));
  DomainSampler s1(line, 1);
  const H2Report r1 = check_h2(line, std::ref(s1), 500);
  EXPECT_TRUE(r1.pass);
  EXPECT_EQ(r1.max_ratio, 0.0);

  const OperatorFamily two = static_linear(2.0 * Matrix::Identity(2, 2), RhoSpec::zero(1.0), 2.0);
  DomainSampler s2(two, 2);
  const H2Report r2 = check_h2(two, std::ref(s2), 500);
  EXPECT_TRUE(r2.pass);
  EXPECT_LE(r2.max_ratio, 2.0);
  EXPECT_GT(r2.max_ratio, 1.9);

  const OperatorFamily under = two.with_growth(1.0);
  DomainSampler s3(under, 3);
  const H2Report r3 = check_h2(under, std::ref(s3), 500);
  EXPECT_FALSE(r3.pass);
  EXPECT_GT(r3.worst_point.norm(), 1.0);
  EXPECT_THROW(check_h2(under, std::ref(s3), 0), PreconditionError);
}

TEST(ResolventProperties, NonexpansiveInDomainAndConsistent) {
  Rng rng(99);
  for (const OperatorFamily& family : catalog()) {
    const Eigen::Index d = family.dimension();
    for (int trial = 0; trial < 300; ++trial) {
      const double t = uniform(rng, 0.0, family.horizon());
      const double eta = std::exp(uniform(rng, -5.0, 3.0));
      const Point x = gaussian_point(rng, d, 3.0);
      const Point xp = trial % 3 == 0 ? Point(x + gaussian_point(rng, d, 1e-3)) : gaussian_point(rng, d, 3.0);
      const Point y = family.resolvent(t, eta, x);
      const Point yp = family.resolvent(t, eta, xp);
      EXPECT_LE((y - yp).norm(), (x - xp).norm() + 1e-10);
      EXPECT_LE(family.domain_distance(t, y), 1e-10);
    }
    // (x - y)/eta in A(t)y, tested against sampled graph pairs.
    const double t = 0.6 * family.horizon();
    const GraphSample graph = sample_graph(family, t, 16, 5);
    for (int trial = 0; trial < 40; ++trial) {
      const double eta = std::exp(uniform(rng, -3.0, 2.0));
      const Point x = gaussian_point(rng, d, 3.0);
      const Point y = family.resolvent(t, eta, x);
      const Point v = (x - y) / eta;
      for (const GraphPair& g : graph.pairs) {
        EXPECT_GE((v - g.y).dot(y - g.x), -1e-8 * (1.0 + g.y.norm()));
      }
    }
  }
}

TEST(ResolventProperties, FixedPointsStayPut) {
  const OperatorFamily line = moving_half_line({0.0}, {0.0}, RhoSpec::zero(1.0));
  EXPECT_EQ(line.resolvent(0.0, 5.0, vec1(0.7))(0), 0.7);
  const OperatorFamily lin = static_linear(Matrix::Identity(3, 3), RhoSpec::zero(1.0), 1.0);
  EXPECT_EQ(lin.resolvent(0.0, 5.0, Point::Zero(3)).norm(), 0.0);
  const OperatorFamily box(MovingConvexSet::fixed(Box{vec({0, 0}), vec({1, 1})}), RhoSpec::zero(1.0), 0.0);
  EXPECT_EQ(box.resolvent(0.0, 2.0, vec({0.5, 0.25})), vec({0.5, 0.25}));
}
