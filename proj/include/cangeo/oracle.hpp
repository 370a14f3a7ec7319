#pragma once

// Approximate shortest paths on a discretized surface, independent of the
// analytic families. Each face is sampled on a planar lattice in its own
// development (angle x height for the can side, the unrolled sector for the
// cup side, Cartesian points for lids and bases) and every edge is weighted
// by the length of an actual curve on the surface, so graph distances never
// undercut true distances. Lattices at resolutions R, R/2, R/4, ... are
// nested and the seam, rim and endpoint edges of every coarser level are
// kept, so refining the mesh can only shorten graph distances.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cangeo/error.hpp"
#include "cangeo/geometry.hpp"

namespace cangeo {

namespace detail {

struct StencilStep {
  int a = 0, b = 0;
};

/// Primitive lattice directions with max(|a|,|b|) <= 4, excluding the (4,3)
/// family: 40 directions.
inline const std::vector<StencilStep>& mesh_stencil() {
  static const std::vector<StencilStep> steps = [] {
    std::vector<StencilStep> out;
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) {
        if (a == 0 && b == 0) continue;
        if (std::gcd(std::abs(a), std::abs(b)) != 1) continue;
        if (std::abs(a) + std::abs(b) == 7) continue;
        out.push_back({a, b});
      }
    return out;
  }();
  return steps;
}

/// Length of the straight segment between polar points (r1, 0) and (r2, sweep)
/// in the universal cover of a cone; through the apex once sweep >= pi.
inline double cone_distance(double r1, double r2, double sweep) {
  sweep = std::abs(sweep);
  if (sweep >= kPi) return r1 + r2;
  const double sh = std::sin(0.5 * sweep);
  return std::sqrt((r1 - r2) * (r1 - r2) + 4.0 * r1 * r2 * sh * sh);
}

struct LatticeMap {
  int lo_i = 0, lo_j = 0, ni = 0, nj = 0;
  std::vector<std::int32_t> id;

  void reset(int i0, int i1, int j0, int j1) {
    lo_i = i0;
    lo_j = j0;
    ni = i1 - i0 + 1;
    nj = j1 - j0 + 1;
    id.assign(static_cast<std::size_t>(ni) * nj, -1);
  }
  std::int32_t& ref(int i, int j) {
    return id[static_cast<std::size_t>(j - lo_j) * ni + (i - lo_i)];
  }
  int at(int i, int j) const {
    const int x = i - lo_i, y = j - lo_j;
    if (x < 0 || y < 0 || x >= ni || y >= nj) return -1;
    return id[static_cast<std::size_t>(y) * ni + x];
  }
};

inline int floor_to(double x, int f) { return static_cast<int>(std::floor(x / f)) * f; }

}  // namespace detail

struct MeshDistance {
  double length = 0.0;
  /// Endpoints are attached to the graph by exact edges, so nothing is lost
  /// to snapping.
  double snap_error = 0.0;
  std::size_t settled = 0;
};

class SurfaceMesh {
 public:
  enum class Region : std::uint8_t { Side, Lid, Base, Rim };

  const Surface& surface() const { return surface_; }
  int resolution() const { return resolution_; }
  std::size_t vertex_count() const { return pos_.size(); }
  const Vec3& vertex(int v) const { return pos_[static_cast<std::size_t>(v)]; }
  Region region(int v) const { return region_[static_cast<std::size_t>(v)]; }
  /// Lattice factors of the nested levels (1 is the finest).
  const std::vector<int>& level_factors() const { return factors_; }
  int rim_vertex_count() const { return n_rim_; }

  /// Vertex ids on a rim, in angular order.
  std::vector<int> rim_vertices(Face rim) const {
    std::vector<int> out;
    for (int k = 0; k < n_rim_; ++k) out.push_back(rim_id(rim, k));
    return out;
  }

  /// Surface point at vertex v.
  SurfacePoint vertex_point(int v) const {
    const auto i = static_cast<std::size_t>(v);
    const Vec3 p = pos_[i];
    switch (region_[i]) {
      case Region::Side:
        if (surface_.is_can()) {
          if (cj_[i] == 0) return SurfacePoint::rim2(angle_of_column(ci_[i]));
          if (cj_[i] == m_rows_) return SurfacePoint::rim1(angle_of_column(ci_[i]));
          return SurfacePoint::side(angle_of_column(ci_[i]), cj_[i] * dy_);
        } else {
          const double r = std::hypot(ci_[i], cj_[i]) / resolution_;
          if (ci_[i] == 0 && cj_[i] == 0) return SurfacePoint::apex();
          return SurfacePoint::side(sector_angle(ci_[i], cj_[i]) * surface_.s, r);
        }
      case Region::Rim: return SurfacePoint::rim1(angle_of_column(ci_[i]));
      case Region::Lid:
      case Region::Base: {
        const bool lid = region_[i] == Region::Lid;
        if (ci_[i] == 0 && cj_[i] == 0) return lid ? SurfacePoint::lid_center() : SurfacePoint::base_center();
        const double r = std::hypot(p.x, p.y), a = wrap_angle(std::atan2(p.y, p.x));
        return lid ? SurfacePoint::lid(a, r) : SurfacePoint::base(a, r);
      }
    }
    return {};
  }

  /// Calls f(u, weight) for every edge v-u.
  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    const auto i = static_cast<std::size_t>(v);
    const auto& st = detail::mesh_stencil();
    switch (region_[i]) {
      case Region::Side:
        if (surface_.is_can()) {
          const int c = ci_[i], r = cj_[i];
          for (std::size_t k = 0; k < st.size(); ++k) {
            const int rr = r + st[k].b;
            if (rr < 0 || rr > m_rows_) continue;
            int cc = c + st[k].a;
            if (cc < 0) cc += n_rim_;
            else if (cc >= n_rim_) cc -= n_rim_;
            f(rr * n_rim_ + cc, side_w_[k]);
          }
        } else {
          const bool check = needs_sweep_check(v);
          for (std::size_t k = 0; k < st.size(); ++k) {
            const int u = side_map_.at(ci_[i] + st[k].a, cj_[i] + st[k].b);
            if (u < 0) continue;
            if (check && !regular_cup_edge(v, u)) continue;
            f(u, lattice_w_[k]);
          }
        }
        break;
      case Region::Lid:
      case Region::Base: {
        const auto& map = region_[i] == Region::Lid ? lid_map_ : base_map_;
        for (std::size_t k = 0; k < st.size(); ++k) {
          const int u = map.at(ci_[i] + st[k].a, cj_[i] + st[k].b);
          if (u >= 0) f(u, lattice_w_[k]);
        }
        break;
      }
      case Region::Rim: break;
    }
    for (std::size_t k = adj_off_[i]; k < adj_off_[i + 1]; ++k) f(adj_[k], adj_w_[k]);
  }

  /// Number of undirected edges (parallel special edges counted separately).
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (int v = 0; v < static_cast<int>(vertex_count()); ++v)
      for_each_neighbor(v, [&](int u, double) { n += u > v ? 1 : 0; });
    return n;
  }

  /// Exact edges from an arbitrary surface point into the graph: every vertex
  /// of level f sharing a face with p within 4 f / R, weighted by the
  /// face-local straight distance.
  std::vector<std::pair<int, double>> attach(const SurfacePoint& point) const {
    const SurfacePoint p = canonicalize(point, surface_);
    std::unordered_map<int, double> best;
    auto add = [&](int v, double w) {
      auto [it, fresh] = best.emplace(v, w);
      if (!fresh) it->second = std::min(it->second, w);
    };
    for (int f : factors_) {
      const double rho = 4.0 * f / resolution_;
      if (in_side(p.face)) attach_side(p, f, rho, add);
      if (in_lid_disk(p.face)) attach_disk(p, Region::Lid, f, rho, add);
      if (surface_.is_can() && in_base_disk(p.face)) attach_disk(p, Region::Base, f, rho, add);
    }
    return {best.begin(), best.end()};
  }

  /// Face-local straight distance when both points share a face, else +inf.
  double same_face_distance(const SurfacePoint& a_in, const SurfacePoint& b_in) const {
    const SurfacePoint a = canonicalize(a_in, surface_), b = canonicalize(b_in, surface_);
    double best = std::numeric_limits<double>::infinity();
    if (in_side(a.face) && in_side(b.face)) {
      if (surface_.is_can()) {
        best = std::hypot(wrap_signed(a.angle - b.angle), can_z(a) - can_z(b));
      } else {
        const double phi = kTwoPi / surface_.s;
        double d = std::fmod(std::abs(a.angle - b.angle) / surface_.s, phi);
        d = std::min(d, phi - d);
        best = detail::cone_distance(cup_slant(a), cup_slant(b), d);
      }
    }
    auto disk = [](const SurfacePoint& q) { return Vec2{q.radial * std::cos(q.angle), q.radial * std::sin(q.angle)}; };
    if (in_lid_disk(a.face) && in_lid_disk(b.face)) best = std::min(best, distance(disk(a), disk(b)));
    if (surface_.is_can() && in_base_disk(a.face) && in_base_disk(b.face))
      best = std::min(best, distance(disk(a), disk(b)));
    return best;
  }

  friend SurfaceMesh build_mesh(const Surface& surface, int resolution);

 private:
  Surface surface_;
  int resolution_ = 0;
  std::vector<int> factors_;
  int n_rim_ = 0;
  int m_rows_ = 0;
  double dx_ = 0.0, dy_ = 0.0;
  double sector_ = 0.0;     // cup development angle 2 pi / s
  double sweep_check_ = 0.0;  // radius below which cup edges may wrap past the gap
  int rim_offset_ = 0;      // cup rim ids start here

  std::vector<Vec3> pos_;
  std::vector<Region> region_;
  std::vector<std::int32_t> ci_, cj_;
  detail::LatticeMap lid_map_, base_map_, side_map_;
  std::vector<double> side_w_, lattice_w_;
  std::vector<std::size_t> adj_off_;
  std::vector<std::int32_t> adj_;
  std::vector<double> adj_w_;

  double angle_of_column(int k) const { return kTwoPi * k / n_rim_; }
  double sector_angle(int i, int j) const {
    if (i == 0 && j == 0) return 0.0;
    return wrap_angle(std::atan2(static_cast<double>(j), static_cast<double>(i)));
  }
  double can_z(const SurfacePoint& p) const {
    return p.face == Face::Rim1 ? surface_.h : p.face == Face::Rim2 ? 0.0 : p.height_or_slant;
  }
  double cup_slant(const SurfacePoint& p) const {
    return p.face == Face::Apex ? 0.0 : p.face == Face::Rim1 ? surface_.s : p.height_or_slant;
  }
  int rim_id(Face rim, int k) const {
    if (surface_.is_cup()) return rim_offset_ + k;
    return rim == Face::Rim1 ? m_rows_ * n_rim_ + k : k;
  }

  bool disk_exists(const detail::LatticeMap& map, int i, int j, int f) const {
    if (i % f != 0 || j % f != 0 || map.at(i, j) < 0) return false;
    return std::hypot(i, j) < resolution_ - 0.25 * f;
  }
  bool cup_exists(int i, int j, int f) const {
    if (i % f != 0 || j % f != 0 || side_map_.at(i, j) < 0) return false;
    return std::hypot(i, j) < surface_.s * resolution_ - 0.25 * f;
  }

  bool needs_sweep_check(int v) const {
    const auto i = static_cast<std::size_t>(v);
    return sweep_check_ > 0.0 && std::hypot(ci_[i], cj_[i]) < sweep_check_ * resolution_;
  }
  /// Angle of lattice point q reached from p by the short way round, in the
  /// universal cover of the development.
  double swept_angle(double ap, int qi, int qj) const {
    if (qi == 0 && qj == 0) return ap;
    return ap + wrap_signed(std::atan2(static_cast<double>(qj), static_cast<double>(qi)) - ap);
  }
  bool regular_cup_edge(int v, int u) const {
    const auto i = static_cast<std::size_t>(v), k = static_cast<std::size_t>(u);
    const double raw = swept_angle(sector_angle(ci_[i], cj_[i]), ci_[k], cj_[k]);
    return raw >= 0.0 && raw < sector_;
  }

  template <class Add>
  void attach_side(const SurfacePoint& p, int f, double rho, Add&& add) const {
    const double R = resolution_;
    if (surface_.is_can()) {
      const double phi = p.angle, z = can_z(p);
      const int i0 = detail::floor_to((phi - rho) / dx_, f), i1 = static_cast<int>(std::ceil((phi + rho) / dx_));
      const int j0 = std::max(0, detail::floor_to((z - rho) / dy_, f));
      const int j1 = std::min(m_rows_, static_cast<int>(std::ceil((z + rho) / dy_)));
      for (int j = j0; j <= j1; j += f)
        for (int i = i0; i <= i1; i += f) {
          const double w = std::hypot(i * dx_ - phi, j * dy_ - z);
          if (w > rho) continue;
          const int col = ((i % n_rim_) + n_rim_) % n_rim_;
          add(j * n_rim_ + col, w);
        }
      return;
    }
    const double sigma = cup_slant(p), a = p.face == Face::Apex ? 0.0 : p.angle / surface_.s;
    for (int rot = -1; rot <= 1; ++rot) {
      const double al = a + rot * sector_;
      const double cx = sigma * std::cos(al) * R, cy = sigma * std::sin(al) * R;
      const double rr = rho * R;
      for (int j = detail::floor_to(cy - rr, f); j <= cy + rr; j += f)
        for (int i = detail::floor_to(cx - rr, f); i <= cx + rr; i += f) {
          if (!cup_exists(i, j, f)) continue;
          const double w = detail::cone_distance(sigma, std::hypot(i, j) / R, sector_angle(i, j) - al);
          if (w <= rho) add(side_map_.at(i, j), w);
        }
    }
    if (surface_.s - sigma <= rho) attach_rim(p.angle, sigma, f, rho, add);
  }

  template <class Add>
  void attach_disk(const SurfacePoint& p, Region which, int f, double rho, Add&& add) const {
    const double R = resolution_;
    const auto& map = which == Region::Lid ? lid_map_ : base_map_;
    const double r = p.radial, cx = r * std::cos(p.angle) * R, cy = r * std::sin(p.angle) * R;
    const double rr = rho * R;
    for (int j = detail::floor_to(cy - rr, f); j <= cy + rr; j += f)
      for (int i = detail::floor_to(cx - rr, f); i <= cx + rr; i += f) {
        if (!disk_exists(map, i, j, f)) continue;
        const double w = std::hypot(i - cx, j - cy) / R;
        if (w <= rho) add(map.at(i, j), w);
      }
    if (1.0 - r <= rho) {
      const Face rim = which == Region::Lid ? Face::Rim1 : Face::Rim2;
      const double win = 2.0 * std::asin(std::min(1.0, rho / (2.0 * std::sqrt(r))));
      const double step = kTwoPi / n_rim_;
      for (int k = detail::floor_to((p.angle - win) / step, f); k <= (p.angle + win) / step; k += f) {
        const double w = disk_chord(r, k * step - p.angle);
        const int kk = ((k % n_rim_) + n_rim_) % n_rim_;
        if (w <= rho) add(rim_id(rim, kk), w);
      }
    }
  }

  /// Cup side point at slant sigma to rim vertices, through the side.
  template <class Add>
  void attach_rim(double angle, double sigma, int f, double rho, Add&& add) const {
    const double step = kTwoPi / n_rim_;
    const double s = surface_.s;
    const double win = s * 2.0 * std::asin(std::min(1.0, rho / (2.0 * std::sqrt(std::max(sigma * s, 1e-300)))));
    for (int k = detail::floor_to((angle - win) / step, f); k <= (angle + win) / step; k += f) {
      const double w = detail::cone_distance(sigma, s, (k * step - angle) / s);
      const int kk = ((k % n_rim_) + n_rim_) % n_rim_;
      if (w <= rho) add(rim_id(Face::Rim1, kk), w);
    }
  }

  static double disk_chord(double r, double dphi) {
    const double sh = std::sin(0.5 * dphi);
    return std::sqrt((1.0 - r) * (1.0 - r) + 4.0 * r * sh * sh);
  }

  friend struct MeshBuilder;
};

struct MeshBuilder {
  SurfaceMesh& m;
  std::vector<std::tuple<int, int, double>> special;

  int add_vertex(Vec3 p, SurfaceMesh::Region r, int i, int j) {
    m.pos_.push_back(p);
    m.region_.push_back(r);
    m.ci_.push_back(i);
    m.cj_.push_back(j);
    return static_cast<int>(m.pos_.size()) - 1;
  }

  void build_disk(SurfaceMesh::Region which, double z) {
    const int R = m.resolution_;
    auto& map = which == SurfaceMesh::Region::Lid ? m.lid_map_ : m.base_map_;
    map.reset(-R, R, -R, R);
    for (int j = -R; j <= R; ++j)
      for (int i = -R; i <= R; ++i) {
        if (!(std::hypot(i, j) < R - 0.25)) continue;
        map.ref(i, j) = add_vertex({static_cast<double>(i) / R, static_cast<double>(j) / R, z}, which, i, j);
      }
  }

  /// Lattice-to-rim edges and rim-to-rim chords across a disk, per level.
  void disk_rim_edges(SurfaceMesh::Region which, Face rim) {
    const auto& map = which == SurfaceMesh::Region::Lid ? m.lid_map_ : m.base_map_;
    const double R = m.resolution_;
    const int n = m.n_rim_;
    for (int f : m.factors_) {
      const double rho = 4.0 * f / R, rr = rho * R;
      for (int k = 0; k < n; k += f) {
        const double phi = m.angle_of_column(k);
        const double cx = std::cos(phi) * R, cy = std::sin(phi) * R;
        const int rk = m.rim_id(rim, k);
        for (int j = detail::floor_to(cy - rr, f); j <= cy + rr; j += f)
          for (int i = detail::floor_to(cx - rr, f); i <= cx + rr; i += f) {
            if (!m.disk_exists(map, i, j, f)) continue;
            const double w = std::hypot(i - cx, j - cy) / R;
            if (w <= rho) special.emplace_back(map.at(i, j), rk, w);
          }
        for (int d = f;; d += f) {
          const double w = 2.0 * std::sin(kPi * d / n);
          if (w > rho || d >= n) break;
          special.emplace_back(rk, m.rim_id(rim, (k + d) % n), w);
        }
      }
    }
  }

  void build_can() {
    const Surface& s = m.surface_;
    const int R = m.resolution_;
    const bool nested = R % 32 == 0;
    m.n_rim_ = nested ? 201 * (R / 32) : static_cast<int>(std::lround(kTwoPi * R));
    const long rows = nested ? std::max(1L, std::lround(32.0 * s.h)) * (R / 32) : std::max(1L, std::lround(s.h * R));
    m.m_rows_ = static_cast<int>(rows);
    m.dx_ = kTwoPi / m.n_rim_;
    m.dy_ = s.h / m.m_rows_;
    for (int j = 0; j <= m.m_rows_; ++j)
      for (int i = 0; i < m.n_rim_; ++i) {
        const double phi = m.angle_of_column(i);
        const double z = j == m.m_rows_ ? s.h : j * m.dy_;
        add_vertex({std::cos(phi), std::sin(phi), z}, SurfaceMesh::Region::Side, i, j);
      }
    build_disk(SurfaceMesh::Region::Lid, s.h);
    build_disk(SurfaceMesh::Region::Base, 0.0);
    for (const auto& st : detail::mesh_stencil()) m.side_w_.push_back(std::hypot(st.a * m.dx_, st.b * m.dy_));
    disk_rim_edges(SurfaceMesh::Region::Lid, Face::Rim1);
    disk_rim_edges(SurfaceMesh::Region::Base, Face::Rim2);
  }

  void build_cup() {
    const Surface& surf = m.surface_;
    const double s = surf.s, height = surf.cup_height();
    const int R = m.resolution_;
    const bool nested = R % 32 == 0;
    m.n_rim_ = nested ? 201 * (R / 32) : static_cast<int>(std::lround(kTwoPi * R));
    m.sector_ = kTwoPi / s;
    if (m.sector_ > kPi) {
      const double reach = 4.2 / R;
      m.sweep_check_ = reach + reach / (2.0 * std::sin(0.5 * (kTwoPi - m.sector_)));
    }

    // Bounding box of the sector {0 <= angle < 2 pi / s, r < s}.
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    auto extend = [&](double a) {
      x0 = std::min(x0, s * std::cos(a));
      x1 = std::max(x1, s * std::cos(a));
      y0 = std::min(y0, s * std::sin(a));
      y1 = std::max(y1, s * std::sin(a));
    };
    extend(0.0);
    extend(m.sector_);
    for (double a : {0.5 * kPi, kPi, 1.5 * kPi})
      if (a < m.sector_) extend(a);
    m.side_map_.reset(static_cast<int>(std::floor(x0 * R)) - 1, static_cast<int>(std::ceil(x1 * R)) + 1,
                      static_cast<int>(std::floor(y0 * R)) - 1, static_cast<int>(std::ceil(y1 * R)) + 1);
    const auto& map = m.side_map_;
    for (int j = map.lo_j; j < map.lo_j + map.nj; ++j)
      for (int i = map.lo_i; i < map.lo_i + map.ni; ++i) {
        const double r = std::hypot(i, j);
        if (!(r < s * R - 0.25)) continue;
        const double a = m.sector_angle(i, j);
        if (!(a < m.sector_)) continue;
        const double k = r / R / s, phi = a * s;
        m.side_map_.ref(i, j) = add_vertex({k * std::cos(phi), k * std::sin(phi), height * (1.0 - k)},
                                           SurfaceMesh::Region::Side, i, j);
      }
    m.rim_offset_ = static_cast<int>(m.pos_.size());
    for (int k = 0; k < m.n_rim_; ++k) {
      const double phi = m.angle_of_column(k);
      add_vertex({std::cos(phi), std::sin(phi), 0.0}, SurfaceMesh::Region::Rim, k, 0);
    }
    build_disk(SurfaceMesh::Region::Lid, 0.0);
    disk_rim_edges(SurfaceMesh::Region::Lid, Face::Rim1);
    side_rim_edges();
    seam_edges();
  }

  void side_rim_edges() {
    const double R = m.resolution_, s = m.surface_.s;
    for (int f : m.factors_) {
      const double rho = 4.0 * f / R, rr = rho * R;
      for (int k = 0; k < m.n_rim_; k += f) {
        const double alpha = m.angle_of_column(k) / s;
        for (int rot = -1; rot <= 1; ++rot) {
          const double al = alpha + rot * m.sector_;
          const double cx = s * std::cos(al) * R, cy = s * std::sin(al) * R;
          for (int j = detail::floor_to(cy - rr, f); j <= cy + rr; j += f)
            for (int i = detail::floor_to(cx - rr, f); i <= cx + rr; i += f) {
              if (!m.cup_exists(i, j, f)) continue;
              const double w = detail::cone_distance(std::hypot(i, j) / R, s, m.sector_angle(i, j) - al);
              if (w <= rho) special.emplace_back(m.side_map_.at(i, j), m.rim_offset_ + k, w);
            }
        }
      }
    }
  }

  /// Edges leaving the development through a straight edge of the sector,
  /// re-entering through the other after rotation and snapping to the level's
  /// lattice. Weighted by the exact length of the straight segment to the
  /// snapped vertex in the universal cover.
  void seam_edges() {
    const double R = m.resolution_, s = m.surface_.s;
    const auto& st = detail::mesh_stencil();
    for (int f : m.factors_) {
      const double clip = s * R - 0.25 * f;
      for (int v = 0; v < m.rim_offset_; ++v) {
        const int pi = m.ci_[v], pj = m.cj_[v];
        if (!m.cup_exists(pi, pj, f)) continue;
        const double rp = std::hypot(pi, pj) / R, ap = m.sector_angle(pi, pj);
        // A step leaving the sector crosses one of its straight edges.
        const double reach = 4.2 * f / R;
        auto ray_gap = [rp](double da) { return da < 0.5 * kPi ? rp * std::sin(da) : rp; };
        if (std::min(ray_gap(ap), ray_gap(m.sector_ - ap)) > reach) continue;
        for (const auto& d : st) {
          const int qi = pi + f * d.a, qj = pj + f * d.b;
          const double rq = std::hypot(qi, qj);
          if (!(rq < clip)) continue;
          const double raw = m.swept_angle(ap, qi, qj);
          if (raw >= 0.0 && raw < m.sector_) continue;
          const double turns = std::floor(raw / m.sector_);
          const double red = raw - turns * m.sector_;
          const int si = static_cast<int>(std::lround(rq * std::cos(red) / f)) * f;
          const int sj = static_cast<int>(std::lround(rq * std::sin(red) / f)) * f;
          if (!m.cup_exists(si, sj, f)) continue;
          const int u = m.side_map_.at(si, sj);
          if (u == v) continue;
          const double lifted = m.sector_angle(si, sj) + turns * m.sector_;
          special.emplace_back(v, u, detail::cone_distance(rp, std::hypot(si, sj) / R, lifted - ap));
        }
      }
    }
  }

  void finish() {
    const std::size_t n = m.pos_.size();
    m.adj_off_.assign(n + 1, 0);
    for (const auto& [a, b, w] : special) {
      ++m.adj_off_[static_cast<std::size_t>(a) + 1];
      ++m.adj_off_[static_cast<std::size_t>(b) + 1];
    }
    for (std::size_t i = 0; i < n; ++i) m.adj_off_[i + 1] += m.adj_off_[i];
    m.adj_.resize(m.adj_off_[n]);
    m.adj_w_.resize(m.adj_off_[n]);
    std::vector<std::size_t> fill(m.adj_off_.begin(), m.adj_off_.end() - 1);
    for (const auto& [a, b, w] : special) {
      m.adj_[fill[a]] = b;
      m.adj_w_[fill[a]++] = w;
      m.adj_[fill[b]] = a;
      m.adj_w_[fill[b]++] = w;
    }
    special.clear();
    special.shrink_to_fit();
  }
};

/// Builds the graph at `resolution` lattice points per unit length.
inline SurfaceMesh build_mesh(const Surface& surface, int resolution) {
  if (resolution < 8) throw Error(ErrorCode::OutOfRange, "mesh resolution must be >= 8");
  SurfaceMesh m;
  m.surface_ = surface;
  m.resolution_ = resolution;
  m.factors_ = {1};
  if (resolution % 32 == 0)
    for (int f = 2; resolution % (32 * f) == 0; f *= 2) m.factors_.push_back(f);
  for (const auto& st : detail::mesh_stencil())
    m.lattice_w_.push_back(std::hypot(st.a, st.b) / resolution);
  MeshBuilder b{m, {}};
  if (surface.is_can()) b.build_can();
  else b.build_cup();
  b.finish();
  return m;
}

/// Graph distance between two surface points, by A* with the straight-line
/// distance in space as heuristic.
inline MeshDistance mesh_distance(const SurfaceMesh& mesh, const SurfacePoint& a, const SurfacePoint& b) {
  const Surface& surface = mesh.surface();
  const SurfacePoint pa = canonicalize(a, surface), pb = canonicalize(b, surface);
  MeshDistance out;
  if (same_point(pa, pb, surface)) return out;

  const Vec3 goal = embed3d(pb, surface);
  std::unordered_map<int, double> exits;
  for (const auto& [v, w] : mesh.attach(pb)) exits.emplace(v, w);

  double best = std::numeric_limits<double>::infinity();
  const double reach = 4.0 * mesh.level_factors().back() / mesh.resolution();
  const double direct = mesh.same_face_distance(pa, pb);
  if (direct <= reach) best = direct;

  using Item = std::tuple<double, double, int>;  // (g + h, g, vertex)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  std::vector<double> g(mesh.vertex_count(), std::numeric_limits<double>::infinity());
  auto heuristic = [&](int v) { return distance(mesh.vertex(v), goal); };
  for (const auto& [v, w] : mesh.attach(pa)) {
    if (w < g[static_cast<std::size_t>(v)]) {
      g[static_cast<std::size_t>(v)] = w;
      open.emplace(w + heuristic(v), w, v);
    }
  }
  while (!open.empty()) {
    const auto [fv, gv, v] = open.top();
    open.pop();
    if (fv >= best) break;
    if (gv > g[static_cast<std::size_t>(v)]) continue;
    ++out.settled;
    if (const auto it = exits.find(v); it != exits.end()) best = std::min(best, gv + it->second);
    mesh.for_each_neighbor(v, [&](int u, double w) {
      const double gu = gv + w;
      if (gu < g[static_cast<std::size_t>(u)]) {
        g[static_cast<std::size_t>(u)] = gu;
        open.emplace(gu + heuristic(u), gu, u);
      }
    });
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::Disconnected, "no graph path between the endpoints");
  out.length = best;
  return out;
}

/// Wavefront OBJ with one `l` record per edge.
inline void write_obj(const SurfaceMesh& mesh, std::ostream& os) {
  os.precision(17);
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    const Vec3 p = mesh.vertex(static_cast<int>(v));
    os << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  }
  for (int v = 0; v < static_cast<int>(mesh.vertex_count()); ++v)
    mesh.for_each_neighbor(v, [&](int u, double) {
      if (u > v) os << "l " << v + 1 << ' ' << u + 1 << '\n';
    });
}

}  // namespace cangeo
