#include <random>

#include <gtest/gtest.h>

#include "polyproj/error.hpp"
#include "polyproj/generate.hpp"
#include "polyproj/oracle.hpp"
#include "support.hpp"

using namespace polyproj;
using testsupport::v2;

TEST(OracleProject, DeskValues) {
  OracleResult r = oracle_project({Halfspace{v2(1, 0), 0}, Halfspace{v2(0, 1), 0}},
                                  v2(2, 3));
  EXPECT_LE((r.point - v2(0, 0)).norm(), 1e-12);
  ASSERT_EQ(r.certificate.lambda.size(), 2u);
  EXPECT_NEAR(r.certificate.lambda[0], 2, 1e-12);
  EXPECT_NEAR(r.certificate.lambda[1], 3, 1e-12);
  EXPECT_TRUE(r.certificate.valid);
  // Only the both-active subset is feasible here.
  EXPECT_EQ(r.candidates, 1u);

  r = oracle_project({Hyperplane{v2(1, 0), 1}, Halfspace{v2(0, 1), 0}}, v2(3, 2));
  EXPECT_LE((r.point - v2(1, 0)).norm(), 1e-12);
  EXPECT_NEAR(r.certificate.beta[0], 2, 1e-12);
  EXPECT_NEAR(r.certificate.lambda[0], 2, 1e-12);

  r = oracle_project({Halfspace{v2(1, 0), 5}}, v2(1, 1));
  EXPECT_LE((r.point - v2(1, 1)).norm(), 1e-12);
  EXPECT_EQ(r.certificate.lambda[0], 0.0);
  EXPECT_TRUE(r.active.empty());
}

TEST(OracleProject, Errors) {
  std::vector<Constraint> many;
  for (int i = 0; i < 21; ++i) many.emplace_back(Halfspace{v2(1, 0), 1.0 * i});
  try {
    oracle_project(many, v2(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyConstraints);
  }
  try {
    oracle_project({Halfspace{v2(1, 0), -1}, Halfspace{v2(-1, 0), -1}}, v2(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySet);
  }
}

TEST(OracleProject, TiesPreferSmallestActiveSet) {
  // Two copies of the same halfspace: {0} and {0,1} give the same point.
  const OracleResult r =
      oracle_project({Halfspace{v2(1, 0), 0}, Halfspace{v2(1, 0), 0}}, v2(2, 0));
  EXPECT_EQ(r.active, (std::vector<std::size_t>{0}));
}

TEST(KktCheck, DeskValues) {
  const std::vector<Constraint> sets{Hyperplane{v2(1, 0), 1}, Halfspace{v2(0, 1), 0}};
  KktCertificate c = kkt_check(sets, v2(3, 2), v2(1, 0), {2}, {2}, 1e-9);
  EXPECT_TRUE(c.valid);
  EXPECT_LE(c.stationarity_residual, 1e-12);
  EXPECT_LE(c.feasibility_residual, 1e-12);
  EXPECT_LE(c.complementarity_residual, 1e-12);

  c = kkt_check(sets, v2(3, 2), v2(1, 0), {0}, {2}, 1e-9);
  // ‖(1,0) − (3,2) + 2(1,0)‖ = ‖(0,−2)‖.
  EXPECT_NEAR(c.stationarity_residual, 2, 1e-12);
  EXPECT_FALSE(c.valid);

  c = kkt_check({Halfspace{v2(1, 0), 5}}, v2(1, 1), v2(1, 1), {0}, {}, 1e-9);
  EXPECT_TRUE(c.valid);
}

TEST(KktCheck, NegativeMultiplierAndCounts) {
  const std::vector<Constraint> sets{Halfspace{v2(1, 0), 0}};
  // Stationary with λ = −1 but the sign condition fails.
  EXPECT_FALSE(kkt_check(sets, v2(-1, 0), v2(0, 0), {-1}, {}, 1e-9).valid);
  EXPECT_THROW(kkt_check(sets, v2(0, 0), v2(0, 0), {}, {}, 1e-9), Error);
  EXPECT_THROW(kkt_check(sets, v2(0, 0), v2(0, 0), {0}, {1}, 1e-9), Error);
}

TEST(OracleProperties, CandidatesCoincideAndCertify) {
  Rng rng(71);
  int nonempty = 0;
  for (int t = 0; t < 500; ++t) {
    const int dim = 2 + t % 5;
    const int m = 1 + t % 6;
    // Constraints through a common feasible anchor so most instances are
    // nonempty; a few get shifted to create empty ones.
    const Vector anchor = random_point(rng, dim, 2);
    std::vector<Constraint> sets;
    for (int i = 0; i < m; ++i) {
      const Vector u = random_unit(rng, dim) * uniform(rng, 0.5, 2);
      const double slack = uniform(rng, 0, 1);
      if (i == 0 && t % 7 == 0) {
        sets.emplace_back(Hyperplane{u, u.dot(anchor)});
      } else {
        sets.emplace_back(Halfspace{u, u.dot(anchor) + slack});
      }
    }
    const Vector x = random_point(rng, dim, 4);
    const OracleResult r = oracle_project(sets, x);
    ++nonempty;
    EXPECT_TRUE(r.certificate.valid);
    EXPECT_LE(r.candidate_spread, 1e-8);
    for (const auto& s : sets) EXPECT_LE(violation(s, r.point), 1e-9);
    // The anchor is feasible, so it is no closer than the projection.
    EXPECT_LE((r.point - x).norm(), (anchor - x).norm() + 1e-12);
  }
  EXPECT_EQ(nonempty, 500);
}

TEST(OracleProperties, PolygonEnumerationAgreesIn2D) {
  Rng rng(72);
  for (int t = 0; t < 500; ++t) {
    std::vector<Constraint> sets;
    std::vector<Vector> a;
    std::vector<double> b;
    const Vector anchor = random_point(rng, 2, 1);
    const int m = 1 + t % 5;
    for (int i = 0; i < m; ++i) {
      const Vector u = random_unit(rng, 2) * uniform(rng, 0.5, 2);
      const double eta = u.dot(anchor) + uniform(rng, 0, 0.5);
      sets.emplace_back(Halfspace{u, eta});
      a.push_back(u);
      b.push_back(eta);
    }
    const Vector x = random_point(rng, 2, 3);
    const OracleResult r = oracle_project(sets, x);
    Vector expected;
    ASSERT_TRUE(testsupport::polygon_nearest_2d(a, b, x, expected));
    EXPECT_LE((r.point - expected).norm(), 1e-9) << "trial " << t;
  }
}

TEST(OracleProperties, GridSearchNeverBeatsTheOracle) {
  Rng rng(73);
  for (int t = 0; t < 10; ++t) {
    std::vector<Constraint> sets;
    const Vector anchor = random_point(rng, 2, 1);
    for (int i = 0; i < 3; ++i) {
      const Vector u = random_unit(rng, 2);
      sets.emplace_back(Halfspace{u, u.dot(anchor) + uniform(rng, 0, 0.5)});
    }
    const Vector x = random_point(rng, 2, 3);
    const OracleResult r = oracle_project(sets, x);
    const Vector grid = testsupport::grid_nearest_2d(
        [&](const Vector& y) {
          for (const auto& s : sets) {
            if (violation(s, y) > 0) return false;
          }
          return true;
        },
        x, 6.0);
    const double dr = (r.point - x).norm();
    const double dg = (grid - x).norm();
    // Every grid point is feasible, so the projection is at least as close,
    // and by strong convexity ‖p − q‖² ≤ ‖q − x‖² − ‖p − x‖².
    EXPECT_LE(dr, dg + 1e-12) << "trial " << t;
    EXPECT_LE((r.point - grid).squaredNorm(), dg * dg - dr * dr + 1e-12);
  }
}
