#pragma once

// Flat models: isometric planar charts of each face, rigid placements of the
// lid/base disks tangent to the unrolled side, piecewise-straight paths, and
// the straightness test that decides whether such a path is a geodesic.
//
// Charts are expressed in a Frame-local angle (see geometry.hpp):
//   can side : (local angle, z)             -- arc length x height
//   cup side : slant * (cos(a/s), sin(a/s)) -- polar about the sector vertex
//   lid/base : r * (cos a, sin a)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cangeo/error.hpp"
#include "cangeo/geometry.hpp"

namespace cangeo {

/// Chart point of a canonical surface point, using `frame` for its angle.
inline Vec2 chart_point(const SurfacePoint& p, Face chart, const Surface& surface,
                        const Frame& frame) {
  const double a = frame.to_local(p.angle);
  if (chart == Face::Side) {
    if (surface.is_can()) return {a, p.face == Face::Rim2 ? 0.0 : p.face == Face::Rim1 ? surface.h
                                                                                      : p.height_or_slant};
    const double sl = p.face == Face::Rim1 ? surface.s : p.face == Face::Apex ? 0.0 : p.height_or_slant;
    return {sl * std::cos(a / surface.s), sl * std::sin(a / surface.s)};
  }
  const double r = is_rim(p.face) ? 1.0 : is_axial(p.face) ? 0.0 : p.radial;
  return {r * std::cos(a), r * std::sin(a)};
}

/// Inverse of chart_point: surface point at a chart position.
inline SurfacePoint surface_point(Vec2 q, Face chart, const Surface& surface, const Frame& frame) {
  if (chart == Face::Side) {
    if (surface.is_can()) {
      const double z = std::clamp(q.y, 0.0, surface.h);
      return canonicalize(SurfacePoint::side(frame.to_surface(q.x), z), surface);
    }
    const double sl = std::min(norm(q), surface.s);
    if (sl == 0.0) return SurfacePoint::apex();
    return canonicalize(SurfacePoint::side(frame.to_surface(surface.s * std::atan2(q.y, q.x)), sl),
                        surface);
  }
  const double r = std::min(norm(q), 1.0);
  const double a = r == 0.0 ? 0.0 : frame.to_surface(std::atan2(q.y, q.x));
  return canonicalize(chart == Face::Lid ? SurfacePoint::lid(a, r) : SurfacePoint::base(a, r),
                      surface);
}

/// Local angle of a rim point given by its side-chart position.
inline double rim_angle_from_side_chart(Vec2 q, const Surface& surface) {
  return surface.is_can() ? q.x : surface.s * std::atan2(q.y, q.x);
}

struct Segment {
  Face face = Face::Side;  // Side, Lid or Base
  Vec2 from;
  Vec2 to;

  double length() const { return distance(from, to); }
};

/// Straight segments in face charts, joined at rim crossings.
struct GeodesicPath {
  Surface surface;
  Frame frame;
  std::vector<Segment> segments;
  std::vector<SurfacePoint> crossings;
  double total_length = 0.0;

  SurfacePoint start() const {
    return surface_point(segments.front().from, segments.front().face, surface, frame);
  }
  SurfacePoint end() const {
    return surface_point(segments.back().to, segments.back().face, surface, frame);
  }
};

inline constexpr double kDegenerateSegment = 1e-14;

/// Assembles a path, dropping degenerate segments and recording the rim
/// point at every junction between faces.
inline GeodesicPath make_path(const Surface& surface, const Frame& frame,
                              std::vector<Segment> segments) {
  GeodesicPath path{surface, frame, {}, {}, 0.0};
  for (const auto& seg : segments)
    if (seg.length() > kDegenerateSegment) path.segments.push_back(seg);
  if (path.segments.empty() && !segments.empty()) path.segments.push_back(segments.front());
  for (std::size_t i = 0; i + 1 < path.segments.size(); ++i) {
    const Segment& a = path.segments[i];
    const Segment& b = path.segments[i + 1];
    if (a.face == b.face) continue;
    const Segment& side = a.face == Face::Side ? a : b;
    const Segment& disk = a.face == Face::Side ? b : a;
    const Vec2 at = a.face == Face::Side ? side.to : side.from;
    const double angle = frame.to_surface(rim_angle_from_side_chart(at, surface));
    path.crossings.push_back(
        detail::make_rim(surface, disk.face == Face::Base ? Face::Rim2 : Face::Rim1, angle));
  }
  for (const auto& seg : path.segments) path.total_length += seg.length();
  return path;
}

/// Same path seen through the mirror across the half-plane of its frame.
inline GeodesicPath mirrored(GeodesicPath path) {
  path.frame.mirrored = !path.frame.mirrored;
  for (auto& c : path.crossings) c = reflect(c, path.frame.origin);
  return path;
}

/// Path traversed from end to start.
inline GeodesicPath reversed(GeodesicPath path) {
  std::reverse(path.segments.begin(), path.segments.end());
  for (auto& seg : path.segments) std::swap(seg.from, seg.to);
  std::reverse(path.crossings.begin(), path.crossings.end());
  return path;
}

/// Reflects a can path in its mid-circle (lid and base exchange roles).
inline GeodesicPath flipped_vertically(GeodesicPath path) {
  const double h = path.surface.h;
  for (auto& seg : path.segments) {
    if (seg.face == Face::Side) {
      seg.from.y = h - seg.from.y;
      seg.to.y = h - seg.to.y;
    } else {
      seg.face = seg.face == Face::Lid ? Face::Base : Face::Lid;
    }
  }
  for (auto& c : path.crossings) {
    c.face = c.face == Face::Rim1 ? Face::Rim2 : Face::Rim1;
    c.height_or_slant = h - c.height_or_slant;
  }
  return path;
}

// ---------------------------------------------------------------------------
// Flat model

/// Placement of a lid or base disk tangent to the unrolled side at the rim
/// point with local angle `tangency`. Rolling the disk along the side edge
/// consumes equal arc length on both curves.
struct DiskPlacement {
  Face disk = Face::Lid;
  double tangency = 0.0;
  Vec2 center;
  Vec2 tangent;  // unit, direction of increasing angle along the side edge
  Vec2 inward;   // unit, from the tangency point towards the disk center
};

struct RimTangency {
  Face rim = Face::Rim1;  // Rim1 (lid) or Rim2 (base)
  double angle = 0.0;     // local angle of the tangency point
};

struct FlatModel {
  Surface surface;
  std::vector<DiskPlacement> disks;

  /// Side region: rectangle [0, 2pi] x [0, h] or sector of radius s and
  /// angle 2pi/s with its vertex at the origin.
  double side_width() const { return surface.is_can() ? kTwoPi : kTwoPi / surface.s; }

  const DiskPlacement* placement(Face disk) const {
    for (const auto& d : disks)
      if (d.disk == disk) return &d;
    return nullptr;
  }
};

inline DiskPlacement place_disk(const Surface& surface, Face disk, double tangency) {
  DiskPlacement d{disk, tangency, {}, {}, {}};
  if (surface.is_can()) {
    const bool lid = disk == Face::Lid;
    const Vec2 touch{tangency, lid ? surface.h : 0.0};
    d.tangent = {1.0, 0.0};
    d.inward = {0.0, lid ? 1.0 : -1.0};
    d.center = touch + d.inward;
  } else {
    const double a = tangency / surface.s;
    const Vec2 n{std::cos(a), std::sin(a)};
    d.tangent = {-n.y, n.x};
    d.inward = n;
    d.center = surface.s * n + n;
  }
  return d;
}

/// Plane position of a disk chart point under a placement.
inline Vec2 place(const DiskPlacement& d, Vec2 disk_chart) {
  const double r = norm(disk_chart);
  if (r == 0.0) return d.center;
  const double rel = std::atan2(disk_chart.y, disk_chart.x) - d.tangency;
  // The image is pinned by the tangency point, the rim direction and the
  // inward normal; for the base this is orientation-reversing in its chart.
  return d.center + (r * std::sin(rel)) * d.tangent + (-r * std::cos(rel)) * d.inward;
}

inline FlatModel unroll(const Surface& surface, const std::vector<RimTangency>& tangencies) {
  FlatModel model{surface, {}};
  for (const auto& t : tangencies) {
    const Face disk = t.rim == Face::Rim2 ? Face::Base : Face::Lid;
    if (disk == Face::Base && surface.is_cup())
      throw Error(ErrorCode::InvalidPoint, "a cup has a single rim");
    model.disks.push_back(place_disk(surface, disk, t.angle));
  }
  return model;
}

// ---------------------------------------------------------------------------
// Straightness

namespace detail {

/// Distance from y to the ray leaving `p` in the direction from x to p.
inline double ray_deviation(Vec2 x, Vec2 p, Vec2 y) {
  const Vec2 dir = p - x;
  const double len = norm(dir);
  if (len == 0.0) return 0.0;
  const Vec2 u = (1.0 / len) * dir;
  const Vec2 py = y - p;
  const double along = dot(py, u);
  if (along < 0.0) return norm(py);
  return std::abs(cross(u, py));
}

inline double junction_defect(const Segment& in, const Segment& out, const Surface& surface) {
  if (in.face == out.face)
    return std::max(ray_deviation(in.from, in.to, out.to), ray_deviation(out.to, out.from, in.from));
  const bool side_first = in.face == Face::Side;
  const Segment& side = side_first ? in : out;
  const Segment& disk = side_first ? out : in;
  const Vec2 joint = side_first ? side.to : side.from;
  const DiskPlacement pl = place_disk(surface, disk.face, rim_angle_from_side_chart(joint, surface));
  const Vec2 x = side_first ? side.from : place(pl, disk.from);
  const Vec2 y = side_first ? place(pl, disk.to) : side.to;
  return std::max(ray_deviation(x, joint, y), ray_deviation(y, joint, x));
}

}  // namespace detail

/// Largest deviation from collinearity over the path's junctions, each
/// measured in the flat model tangent at that junction's rim point.
inline double straightness_defect(const GeodesicPath& path) {
  if (path.segments.size() < 2)
    throw Error(ErrorCode::SingleSegment, "a single segment is trivially straight");
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < path.segments.size(); ++i)
    worst = std::max(worst, detail::junction_defect(path.segments[i], path.segments[i + 1],
                                                    path.surface));
  return worst;
}

/// straightness_defect, with single-segment paths reported as 0.
inline double geodesic_defect(const GeodesicPath& path) {
  return path.segments.size() < 2 ? 0.0 : straightness_defect(path);
}

inline bool is_geodesic(const GeodesicPath& path, double tolerance = 1e-8) {
  return geodesic_defect(path) < tolerance;
}

// ---------------------------------------------------------------------------
// Sampling

inline std::vector<Vec3> path_to_polyline(const GeodesicPath& path, double samples_per_unit) {
  std::vector<Vec3> out;
  for (const auto& seg : path.segments) {
    const int n = std::max(1, static_cast<int>(std::ceil(seg.length() * samples_per_unit)));
    for (int k = out.empty() ? 0 : 1; k <= n; ++k) {
      const double f = static_cast<double>(k) / n;
      const Vec2 q = seg.from + f * (seg.to - seg.from);
      out.push_back(embed3d(surface_point(q, seg.face, path.surface, path.frame), path.surface));
    }
  }
  return out;
}

inline double polyline_length(const std::vector<Vec3>& pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

/// Point at arc-length fraction f in [0, 1] along the path.
inline SurfacePoint point_at_fraction(const GeodesicPath& path, double f) {
  double target = std::clamp(f, 0.0, 1.0) * path.total_length;
  for (const auto& seg : path.segments) {
    const double len = seg.length();
    if (target <= len || &seg == &path.segments.back()) {
      const double k = len > 0.0 ? std::clamp(target / len, 0.0, 1.0) : 0.0;
      return surface_point(seg.from + k * (seg.to - seg.from), seg.face, path.surface, path.frame);
    }
    target -= len;
  }
  return path.start();
}

/// Number of distinct points the path shares with a rim (endpoints included).
inline int rim_contacts(const GeodesicPath& path, Face rim) {
  std::vector<Vec3> hits;
  auto add = [&](const SurfacePoint& p) {
    if (p.face != rim) return;
    const Vec3 x = embed3d(p, path.surface);
    for (const auto& y : hits)
      if (distance(x, y) < 1e-12) return;
    hits.push_back(x);
  };
  add(path.start());
  for (const auto& c : path.crossings) add(c);
  add(path.end());
  return static_cast<int>(hits.size());
}

// ---------------------------------------------------------------------------
// SVG export: one group per face, 1 user unit = 1 rim radius.

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline Vec2 to_model_plane(const FlatModel& model, const Segment& seg, Vec2 q) {
  if (seg.face == Face::Side) return q;
  if (const DiskPlacement* d = model.placement(seg.face)) return place(*d, q);
  return place(place_disk(model.surface, seg.face, 0.0), q);
}

}  // namespace detail

inline std::string to_svg(const FlatModel& model, const std::vector<GeodesicPath>& paths = {}) {
  using detail::fmt;
  const Surface& s = model.surface;
  double minx = -0.5, maxx = 0.5, miny = -0.5, maxy = 0.5;
  auto grow = [&](Vec2 p, double pad = 0.0) {
    minx = std::min(minx, p.x - pad);
    maxx = std::max(maxx, p.x + pad);
    miny = std::min(miny, p.y - pad);
    maxy = std::max(maxy, p.y + pad);
  };
  if (s.is_can()) {
    grow({0.0, 0.0});
    grow({kTwoPi, s.h});
  } else {
    grow({0.0, 0.0}, s.s);
  }
  for (const auto& d : model.disks) grow(d.center, 1.0);
  for (const auto& p : paths)
    for (const auto& seg : p.segments) {
      grow(detail::to_model_plane(model, seg, seg.from));
      grow(detail::to_model_plane(model, seg, seg.to));
    }
  minx -= 0.2, miny -= 0.2, maxx += 0.2, maxy += 0.2;

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(minx) << ' ' << fmt(-maxy)
    << ' ' << fmt(maxx - minx) << ' ' << fmt(maxy - miny) << "\">\n";
  o << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"0.01\">\n";
  o << "<g id=\"side\" data-face=\"side\" stroke=\"black\">\n";
  if (s.is_can()) {
    o << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kTwoPi) << "\" height=\"" << fmt(s.h) << "\"/>\n";
  } else {
    const double w = kTwoPi / s.s;
    o << "<path d=\"M 0 0 L " << fmt(s.s) << " 0 A " << fmt(s.s) << ' ' << fmt(s.s) << " 0 "
      << (w > kPi ? 1 : 0) << " 1 " << fmt(s.s * std::cos(w)) << ' ' << fmt(s.s * std::sin(w))
      << " Z\"/>\n";
  }
  o << "</g>\n";
  for (const auto& d : model.disks) {
    o << "<g id=\"" << to_string(d.disk) << "\" data-face=\"" << to_string(d.disk)
      << "\" stroke=\"black\">\n";
    o << "<circle cx=\"" << fmt(d.center.x) << "\" cy=\"" << fmt(d.center.y) << "\" r=\"1\"/>\n";
    o << "</g>\n";
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    o << "<g id=\"path" << i << "\" stroke=\"red\">\n";
    for (const auto& seg : paths[i].segments) {
      const Vec2 a = detail::to_model_plane(model, seg, seg.from);
      const Vec2 b = detail::to_model_plane(model, seg, seg.to);
      o << "<line data-face=\"" << to_string(seg.face) << "\" x1=\"" << fmt(a.x) << "\" y1=\""
        << fmt(a.y) << "\" x2=\"" << fmt(b.x) << "\" y2=\"" << fmt(b.y) << "\"/>\n";
    }
    o << "</g>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace cangeo
