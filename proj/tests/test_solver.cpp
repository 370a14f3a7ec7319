#include <gtest/gtest.h>

#include <random>

#include "cangeo/solver.hpp"
#include "support/independent.hpp"

using namespace cangeo;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

std::vector<Surface> surfaces() {
  return {Surface::can(1.5), Surface::can(0.3), Surface::can(4.0),
          Surface::cup(2.0), Surface::cup(1.2), Surface::cup(6.0)};
}

}  // namespace

TEST(Minimizers, DocumentedExamples) {
  const auto c = minimize_1d([](double t) { return std::cos(t); }, 0.0, kPi).global();
  EXPECT_NEAR(c.x, kPi, 1e-7);
  EXPECT_NEAR(c.value, -1.0, 1e-14);
  EXPECT_EQ(minimize_1d([](double t) { return t * t; }, 0.0, 1.0).global().x, 0.0);
  const auto q = minimize_2d([](double t, double u) { return (t - 1) * (t - 1) + (u - 2) * (u - 2); }, Box2{0, 3, 0, 3}).global();
  EXPECT_NEAR(q.x[0], 1.0, 1e-7);
  EXPECT_NEAR(q.x[1], 2.0, 1e-7);
  // Symmetric over-lid instance: a symmetric minimizer exists.
  const auto s = minimize_2d([](double t, double u) { return can_side_over_lid_length(0.3, 0.3, 2.5, t, u); },
                             Box2{0, 2.5, 0, 2.5}).global();
  EXPECT_NEAR(s.x[0], s.x[1], 1e-6);
}

TEST(Minimizers, DenseScanOracle) {
  const double th = kPi / 2;
  auto f = [&](double t) { return can_side_to_lid_length(1.0, 0.5, th, t); };
  double best = 1e300;
  for (int i = 0; i <= 10000000; ++i) best = std::min(best, f(th * i / 10000000));
  EXPECT_NEAR(minimize_1d(f, 0.0, th).global().value, best, 1e-6);
  EXPECT_LE(minimize_1d(f, 0.0, th).global().value, best);
}

TEST(Solve, OppositeRimsAtCriticalHeight) {
  const double h = (kPi * kPi - 4) / 4;
  const SolveReport r = solve(Surface::can(h), SurfacePoint::rim1(0.0), SurfacePoint::rim2(kPi));
  EXPECT_EQ(r.multiplicity.count, 4);
  EXPECT_FALSE(r.multiplicity.infinite);
  EXPECT_NEAR(r.min_length, (kPi * kPi + 4) / 4, 1e-9);
  EXPECT_NEAR(r.min_length, 2 + h, 1e-9);
  EXPECT_FALSE(r.bound_violated);
}

TEST(Solve, TallCanOppositeRims) {
  const SolveReport r = solve(Surface::can(2.0), SurfacePoint::rim1(0.0), SurfacePoint::rim2(kPi));
  EXPECT_EQ(r.multiplicity.count, 2);
  EXPECT_NEAR(r.min_length, std::sqrt(4 + kPi * kPi), 1e-12);
  for (const auto& p : r.paths) {
    EXPECT_EQ(p.family, FamilyId::CanSideDirect);
    for (const auto& seg : p.path.segments) EXPECT_EQ(seg.face, Face::Side);
  }
}

TEST(Solve, CupThreePaths) {
  const SolveReport r = solve(Surface::cup(2.0), SurfacePoint::side(0.0, 1.5), SurfacePoint::rim1(kPi));
  EXPECT_EQ(r.multiplicity.count, 3);
  EXPECT_NEAR(r.min_length, 2.5, 1e-9);
}

TEST(Solve, BothAxialIsInfinite) {
  const SolveReport r = solve(Surface::can(1.7), SurfacePoint::lid_center(), SurfacePoint::base_center());
  EXPECT_TRUE(r.multiplicity.infinite);
  EXPECT_FALSE(r.multiplicity.reason.empty());
  EXPECT_NEAR(r.min_length, 3.7, 1e-12);
  EXPECT_EQ(r.paths.size(), 1u);
  const SolveReport c = solve(Surface::cup(2.0), SurfacePoint::apex(), SurfacePoint::lid_center());
  EXPECT_TRUE(c.multiplicity.infinite);
  EXPECT_NEAR(c.min_length, 3.0, 1e-12);
}

TEST(Solve, SameHalfPlaneIsUnique) {
  std::mt19937_64 g(testsupport::seed());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Surface& s : surfaces())
    for (int i = 0; i < 10; ++i) {
      SurfacePoint a = testsupport::random_point(g, s), b = testsupport::random_point(g, s);
      b.angle = a.angle;
      if (a.face == b.face && a.radial == b.radial && a.height_or_slant == b.height_or_slant) continue;
      const SolveReport r = solve(s, a, b);
      EXPECT_EQ(r.multiplicity.count, 1);
      EXPECT_EQ(r.paths.front().family, FamilyId::HalfPlane);
      EXPECT_NEAR(r.min_length, testsupport::rim_graph_distance(s, a, b, 64), 1e-12);
    }
  // One axial endpoint: still a single path.
  const SolveReport r = solve(Surface::can(1.0), SurfacePoint::lid_center(), SurfacePoint::side(2.0, 0.3));
  EXPECT_FALSE(r.multiplicity.infinite);
  EXPECT_EQ(r.multiplicity.count, 1);
  EXPECT_NEAR(r.min_length, 1.7, 1e-12);
  EXPECT_NEAR(solve(Surface::can(1.0), SurfacePoint::base(0.4, 0.4), SurfacePoint::side(0.4, 0.5)).min_length, 1.1, 1e-12);
  EXPECT_NEAR(solve(Surface::can(2.0), SurfacePoint::base_center(), SurfacePoint::lid(1.0, 0.5)).min_length, 3.5, 1e-12);
}

TEST(Solve, Errors) {
  const Surface can = Surface::can(1.0);
  EXPECT_EQ(code_of([&] { solve(can, SurfacePoint::side(1.0, 0.5), SurfacePoint::side(1.0 + kTwoPi, 0.5)); }),
            ErrorCode::SamePoint);
  EXPECT_EQ(code_of([&] { solve(can, SurfacePoint::lid(0.0, 1.0), SurfacePoint::side(0.0, 1.0)); }), ErrorCode::SamePoint);
  EXPECT_EQ(code_of([&] { solve(can, SurfacePoint::side(0.0, 3.0), SurfacePoint::side(1.0, 0.5)); }), ErrorCode::InvalidPoint);
  EXPECT_EQ(code_of([&] { solve(Surface::cup(2.0), SurfacePoint::base(0.0, 0.5), SurfacePoint::apex()); }),
            ErrorCode::InvalidPoint);
}

TEST(Solve, NearTieDiagnostic) {
  // Mid-depth diaxial pair just above the critical height.
  const double c = 0.5, hc = (kPi * kPi - 3) / 6;
  auto gap = [&](double h) {
    const SolveReport r = solve(Surface::can(h), SurfacePoint::side(0.0, h - c), SurfacePoint::side(kPi, c));
    double direct = 0, over = 0;
    for (const auto& f : r.per_family) {
      if (f.id == FamilyId::CanSideDirect) direct = f.best.value;
      if (f.id == FamilyId::CanSideOverLid) over = f.best.value;
    }
    return std::pair{over - direct, r};
  };
  const double slope = (gap(hc + 1e-4).first - gap(hc).first) / 1e-4;
  const auto [g5, r5] = gap(hc + 5e-9 / slope);
  ASSERT_GT(g5, 1e-9);
  ASSERT_LT(g5, 1e-8);
  EXPECT_TRUE(r5.near_tie);
  EXPECT_EQ(r5.multiplicity.count, 2);
  const auto [g50, r50] = gap(hc + 5e-8 / slope);
  EXPECT_GT(g50, 1e-8);
  EXPECT_FALSE(r50.near_tie);
}

TEST(Solve, ReportInvariantsOnRandomPairs) {
  std::mt19937_64 g(testsupport::seed());
  for (const Surface& s : surfaces())
    for (int i = 0; i < 40; ++i) {
      const SurfacePoint a = testsupport::random_point(g, s), b = testsupport::random_point(g, s);
      const SolveReport r = solve(s, a, b);
      ASSERT_FALSE(r.paths.empty());
      EXPECT_FALSE(r.bound_violated);
      EXPECT_LE(r.multiplicity.count, s.is_can() ? 4 : 3);
      double least = 1e300;
      for (const auto& f : r.per_family) least = std::min(least, f.best.value);
      EXPECT_EQ(r.min_length, least);
      for (const auto& p : r.paths) {
        EXPECT_NEAR(p.path.total_length, r.min_length, 1e-9);
        EXPECT_LT(p.defect, 1e-8);
        for (double x : p.params) {
          EXPECT_GE(x, 0.0);
          EXPECT_LE(x, r.theta);
        }
        for (Face rim : {Face::Rim1, Face::Rim2}) {
          const int n = rim_contacts(p.path, rim);
          EXPECT_LE(n, 2);
          if (separated_by_rim(r.a.face, r.b.face, rim)) {
            EXPECT_EQ(n, 1);
          }
        }
      }
    }
}

TEST(Solve, ExchangeAndMirrorInvariance) {
  std::mt19937_64 g(testsupport::seed() + 1);
  for (const Surface& s : surfaces())
    for (int i = 0; i < 15; ++i) {
      const SurfacePoint a = testsupport::random_point(g, s), b = testsupport::random_point(g, s);
      const double l = solve(s, a, b).min_length;
      EXPECT_NEAR(solve(s, b, a).min_length, l, 1e-12);
      EXPECT_NEAR(solve(s, a, reflect(b, a.angle)).min_length, l, 1e-12);
    }
}

TEST(Solve, CupPathsAvoidApex) {
  std::mt19937_64 g(testsupport::seed() + 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double sl : {1.2, 2.0, 6.0}) {
    const Surface s = Surface::cup(sl);
    const Vec3 apex = embed3d(SurfacePoint::apex(), s);
    for (int i = 0; i < 20; ++i) {
      const SurfacePoint a = SurfacePoint::side(kTwoPi * u(g), sl * (0.02 + 0.98 * u(g)));
      const SurfacePoint b = SurfacePoint::side(kTwoPi * u(g), sl * (0.02 + 0.98 * u(g)));
      for (const auto& p : solve(s, a, b).paths) {
        double nearest = 1e300;
        for (const Vec3& q : path_to_polyline(p.path, 2000.0)) nearest = std::min(nearest, distance(q, apex));
        EXPECT_GT(nearest, 1e-6);
      }
    }
  }
}

TEST(Solve, NeverLongerThanRimGraphPaths) {
  // Rim-sample graph lengths are lengths of actual surface paths.
  std::mt19937_64 g(testsupport::seed() + 3);
  for (const Surface& s : surfaces())
    for (int i = 0; i < 12; ++i) {
      const SurfacePoint a = testsupport::random_point(g, s), b = testsupport::random_point(g, s);
      const double l = solve(s, a, b).min_length;
      const double graph = testsupport::rim_graph_distance(s, a, b);
      EXPECT_LE(l, graph + 1e-12);
      EXPECT_GT(l, graph - 2e-4);
    }
}
