#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <sstream>

#include "cangeo/oracle.hpp"
#include "cangeo/solver.hpp"
#include "support/independent.hpp"

using namespace cangeo;

namespace {

using Region = SurfaceMesh::Region;

bool on_surface(const Vec3& p, const Surface& s) {
  const double r = std::hypot(p.x, p.y);
  if (s.is_can()) {
    const bool side = std::abs(r - 1.0) < 1e-12 && p.z >= -1e-12 && p.z <= s.h + 1e-12;
    const bool disk = r <= 1.0 + 1e-12 && (std::abs(p.z) < 1e-12 || std::abs(p.z - s.h) < 1e-12);
    return side || disk;
  }
  const double H = s.cup_height();
  const bool cone = std::abs(r * H - (H - p.z)) < 1e-12 && p.z >= -1e-12 && p.z <= H + 1e-12;
  const bool lid = std::abs(p.z) < 1e-12 && r <= 1.0 + 1e-12;
  return cone || lid;
}

std::size_t reachable(const SurfaceMesh& m) {
  std::vector<char> seen(m.vertex_count(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  std::size_t n = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    m.for_each_neighbor(v, [&](int u, double) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++n;
        q.push(u);
      }
    });
  }
  return n;
}

std::vector<Surface> surfaces() { return {Surface::can(1.0), Surface::can(0.3), Surface::cup(2.0), Surface::cup(1.3), Surface::cup(5.0)}; }

}  // namespace

TEST(BuildMesh, ConnectedAtCoarsestResolution) {
  for (const Surface& s : surfaces()) {
    const SurfaceMesh m = build_mesh(s, 8);
    EXPECT_EQ(reachable(m), m.vertex_count());
  }
  EXPECT_THROW(build_mesh(Surface::can(1.0), 7), Error);
}

TEST(BuildMesh, RimVerticesAreShared) {
  for (const Surface& s : surfaces()) {
    const SurfaceMesh m = build_mesh(s, 32);
    for (Face rim : s.is_can() ? std::vector{Face::Rim1, Face::Rim2} : std::vector{Face::Rim1}) {
      const auto ids = m.rim_vertices(rim);
      ASSERT_EQ(static_cast<int>(ids.size()), m.rim_vertex_count());
      const Region disk = rim == Face::Rim1 ? Region::Lid : Region::Base;
      for (int v : ids) {
        EXPECT_EQ(m.vertex_point(v).face, rim);
        EXPECT_NEAR(std::hypot(m.vertex(v).x, m.vertex(v).y), 1.0, 1e-15);
        bool to_side = false, to_disk = false;
        m.for_each_neighbor(v, [&](int u, double) {
          to_side |= m.region(u) == Region::Side;
          to_disk |= m.region(u) == disk;
        });
        EXPECT_TRUE(to_side);
        EXPECT_TRUE(to_disk);
      }
    }
  }
}

TEST(BuildMesh, VerticesOnSurfaceAndPositiveWeights) {
  for (const Surface& s : surfaces()) {
    const SurfaceMesh m = build_mesh(s, 64);
    for (int v = 0; v < static_cast<int>(m.vertex_count()); ++v) {
      ASSERT_TRUE(on_surface(m.vertex(v), s)) << v;
      EXPECT_LT(distance(embed3d(m.vertex_point(v), s), m.vertex(v)), 1e-12);
      m.for_each_neighbor(v, [&](int u, double w) {
        EXPECT_GT(w, 0.0);
        // Edges follow the surface, so they are never shorter than the chord.
        EXPECT_GE(w, distance(m.vertex(v), m.vertex(u)) - 1e-13);
      });
    }
  }
}

TEST(BuildMesh, VertexCountGrowsQuadratically) {
  for (const Surface& s : surfaces()) {
    const double r = static_cast<double>(build_mesh(s, 128).vertex_count()) / build_mesh(s, 64).vertex_count();
    EXPECT_GT(r, 3.5);
    EXPECT_LT(r, 4.5);
  }
}

TEST(MeshDistance, AdjacentVerticesGiveEdgeWeight) {
  std::mt19937_64 g(testsupport::seed());
  for (const Surface& s : surfaces()) {
    const SurfaceMesh m = build_mesh(s, 64);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(m.vertex_count()) - 1);
    for (int i = 0; i < 30; ++i) {
      const int v = pick(g);
      m.for_each_neighbor(v, [&](int u, double w) {
        if (u % 7 != 0) return;
        EXPECT_NEAR(mesh_distance(m, m.vertex_point(v), m.vertex_point(u)).length, w, 1e-12);
      });
    }
  }
}

TEST(MeshDistance, DiaxialRimsAtCriticalHeight) {
  const double h = (kPi * kPi - 4) / 4;
  const SurfaceMesh m = build_mesh(Surface::can(h), 256);
  const MeshDistance d = mesh_distance(m, SurfacePoint::rim1(0.0), SurfacePoint::rim2(kPi));
  const double exact = (kPi * kPi + 4) / 4;
  EXPECT_GE(d.length, exact - 1e-9);
  EXPECT_LE(d.length, exact * 1.015);
  EXPECT_EQ(d.snap_error, 0.0);
  EXPECT_GT(d.settled, 0u);
}

TEST(MeshDistance, LidToBaseInstance) {
  const Surface s = Surface::can(1.5);
  const SurfacePoint a = SurfacePoint::lid(0.0, 0.7), b = SurfacePoint::base(2.0, 0.4);
  const double exact = solve(s, a, b).min_length;
  const double d = mesh_distance(build_mesh(s, 256), a, b).length;
  EXPECT_GE(d, exact - 1e-9);
  EXPECT_LE(d, exact * 1.015);
}

TEST(MeshDistance, NeverBelowSolver) {
  std::mt19937_64 g(testsupport::seed());
  for (const Surface& s : surfaces()) {
    const SurfaceMesh m = build_mesh(s, 64);
    for (int i = 0; i < 20; ++i) {
      const SurfacePoint a = testsupport::random_point(g, s), b = testsupport::random_point(g, s);
      const double exact = solve(s, a, b).min_length;
      const double d = mesh_distance(m, a, b).length;
      EXPECT_GE(d, exact - 1e-9);
      EXPECT_LE(d, exact * 1.02);
    }
  }
}

TEST(MeshDistance, MonotoneUnderRefinement) {
  std::mt19937_64 g(testsupport::seed() + 5);
  for (const Surface& s : surfaces()) {
    const SurfaceMesh m64 = build_mesh(s, 64), m128 = build_mesh(s, 128), m256 = build_mesh(s, 256);
    for (int i = 0; i < 8; ++i) {
      const SurfacePoint a = testsupport::random_point(g, s), b = testsupport::random_point(g, s);
      const double d64 = mesh_distance(m64, a, b).length;
      const double d128 = mesh_distance(m128, a, b).length;
      const double d256 = mesh_distance(m256, a, b).length;
      EXPECT_LE(d128, d64 + 1e-12);
      EXPECT_LE(d256, d128 + 1e-12);
    }
  }
}

TEST(MeshDistance, SamePointIsZero) {
  const SurfaceMesh m = build_mesh(Surface::can(1.0), 16);
  EXPECT_EQ(mesh_distance(m, SurfacePoint::lid(0.2, 1.0), SurfacePoint::rim1(0.2)).length, 0.0);
}

TEST(WriteObj, CountsMatch) {
  const SurfaceMesh m = build_mesh(Surface::cup(2.0), 16);
  std::ostringstream os;
  write_obj(m, os);
  std::istringstream is(os.str());
  std::size_t v = 0, l = 0;
  for (std::string line; std::getline(is, line);) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("l ", 0) == 0) ++l;
  }
  EXPECT_EQ(v, m.vertex_count());
  EXPECT_EQ(l, m.edge_count());
}
