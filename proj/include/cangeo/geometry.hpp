#pragma once

// Surfaces (soup can and conical cup with lid), points on them, and the
// angular normalization used by every length functional.
//
// Conventions: the rim radius is 1 and all lengths are in rim radii.
//   can: side z in [0,h]; lid (rim T1) at z=h; base (rim T2) at z=0.
//   cup: lid (rim T) at z=0 closing the wide end; apex at z=sqrt(s^2-1).
//        A side point is addressed by its slant distance from the apex.

#include <cmath>
#include <numbers>
#include <string>

#include "cangeo/error.hpp"

namespace cangeo {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double k, Vec3 a) { return {k * a.x, k * a.y, k * a.z}; }
};

inline double norm(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Wraps an angle into (-pi, pi].
inline double wrap_signed(double a) {
  double r = wrap_angle(a);
  return r > kPi ? r - kTwoPi : r;
}

enum class SurfaceKind { Can, Cup };

struct Surface {
  SurfaceKind kind = SurfaceKind::Can;
  double h = 1.0;  // can height
  double s = 2.0;  // cup slant height

  static Surface can(double height) {
    if (!(height > 0.0) || !std::isfinite(height))
      throw Error(ErrorCode::InvalidSurface, "can height must be positive");
    return {SurfaceKind::Can, height, 0.0};
  }

  static Surface cup(double slant) {
    if (!(slant > 1.0) || !std::isfinite(slant))
      throw Error(ErrorCode::InvalidSurface, "cup slant height must exceed 1");
    return {SurfaceKind::Cup, 0.0, slant};
  }

  bool is_can() const { return kind == SurfaceKind::Can; }
  bool is_cup() const { return kind == SurfaceKind::Cup; }

  /// Axial height of the cup (apex above the lid plane).
  double cup_height() const { return std::sqrt((s - 1.0) * (s + 1.0)); }

  /// sin of the cup's cone (half-)angle.
  double sin_cone_angle() const { return 1.0 / s; }
};

enum class Face { Side, Lid, Base, Rim1, Rim2, Apex, LidCenter, BaseCenter };

inline const char* to_string(Face f) {
  switch (f) {
    case Face::Side: return "side";
    case Face::Lid: return "lid";
    case Face::Base: return "base";
    case Face::Rim1: return "rim1";
    case Face::Rim2: return "rim2";
    case Face::Apex: return "apex";
    case Face::LidCenter: return "lidcenter";
    case Face::BaseCenter: return "basecenter";
  }
  return "?";
}

inline bool is_axial(Face f) {
  return f == Face::Apex || f == Face::LidCenter || f == Face::BaseCenter;
}

inline bool is_rim(Face f) { return f == Face::Rim1 || f == Face::Rim2; }

/// A point on a surface. `radial` is the distance from the axis for lid and
/// base points; `height_or_slant` is z on a can side or the slant distance
/// from the apex on a cup side. After canonicalization every field is filled
/// consistently (e.g. a can rim point has radial 1 and z in {0, h}).
struct SurfacePoint {
  Face face = Face::Side;
  double angle = 0.0;
  double radial = 0.0;
  double height_or_slant = 0.0;

  static SurfacePoint side(double angle, double z_or_slant) {
    return {Face::Side, angle, 0.0, z_or_slant};
  }
  static SurfacePoint lid(double angle, double r) { return {Face::Lid, angle, r, 0.0}; }
  static SurfacePoint base(double angle, double r) { return {Face::Base, angle, r, 0.0}; }
  static SurfacePoint rim1(double angle) { return {Face::Rim1, angle, 1.0, 0.0}; }
  static SurfacePoint rim2(double angle) { return {Face::Rim2, angle, 1.0, 0.0}; }
  static SurfacePoint apex() { return {Face::Apex, 0.0, 0.0, 0.0}; }
  static SurfacePoint lid_center() { return {Face::LidCenter, 0.0, 0.0, 0.0}; }
  static SurfacePoint base_center() { return {Face::BaseCenter, 0.0, 0.0, 0.0}; }
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::OutOfRange, what);
}

inline SurfacePoint make_rim(const Surface& surface, Face rim, double angle) {
  SurfacePoint p{rim, wrap_angle(angle), 1.0, 0.0};
  if (surface.is_can())
    p.height_or_slant = rim == Face::Rim1 ? surface.h : 0.0;
  else
    p.height_or_slant = surface.s;
  return p;
}

}  // namespace detail

/// Returns the canonical form of `point`: rim points carry a rim tag, axial
/// points carry angle 0, and angles are wrapped into [0, 2pi).
inline SurfacePoint canonicalize(const SurfacePoint& point, const Surface& surface) {
  using detail::require;
  require(std::isfinite(point.angle), "angle must be finite");
  const bool can = surface.is_can();
  switch (point.face) {
    case Face::Side: {
      const double v = point.height_or_slant;
      require(std::isfinite(v), "side coordinate must be finite");
      if (can) {
        require(v >= 0.0 && v <= surface.h, "side height outside [0, h]");
        if (v == surface.h) return detail::make_rim(surface, Face::Rim1, point.angle);
        if (v == 0.0) return detail::make_rim(surface, Face::Rim2, point.angle);
        return {Face::Side, wrap_angle(point.angle), 1.0, v};
      }
      require(v > 0.0 && v <= surface.s, "side slant outside (0, s]");
      if (v == surface.s) return detail::make_rim(surface, Face::Rim1, point.angle);
      return {Face::Side, wrap_angle(point.angle), v / surface.s, v};
    }
    case Face::Lid:
    case Face::Base: {
      const bool lid = point.face == Face::Lid;
      require(lid || can, "a cup has no base");
      const double r = point.radial;
      require(std::isfinite(r) && r >= 0.0 && r <= 1.0, "disk radius outside [0, 1]");
      if (r == 1.0) return detail::make_rim(surface, lid ? Face::Rim1 : Face::Rim2, point.angle);
      if (r == 0.0) return {lid ? Face::LidCenter : Face::BaseCenter, 0.0, 0.0, 0.0};
      return {point.face, wrap_angle(point.angle), r, 0.0};
    }
    case Face::Rim1: return detail::make_rim(surface, Face::Rim1, point.angle);
    case Face::Rim2:
      require(can, "a cup has a single rim");
      return detail::make_rim(surface, Face::Rim2, point.angle);
    case Face::Apex:
      require(!can, "a can has no apex");
      return {Face::Apex, 0.0, 0.0, 0.0};
    case Face::LidCenter: return {Face::LidCenter, 0.0, 0.0, 0.0};
    case Face::BaseCenter:
      require(can, "a cup has no base");
      return {Face::BaseCenter, 0.0, 0.0, 0.0};
  }
  throw Error(ErrorCode::OutOfRange, "unknown face");
}

inline Face classify(const SurfacePoint& point, const Surface& surface) {
  return canonicalize(point, surface).face;
}

/// Angle subtended by the axial half-planes through A and B, folded into
/// [0, pi]. `mirror` records that B's angle had to be reflected across the
/// half-plane of A to land in [0, pi].
struct AngleGap {
  double theta = 0.0;
  bool mirror = false;
  bool axial = false;  // an endpoint is axial; theta is 0 by convention
};

inline AngleGap angle_gap(const SurfacePoint& a, const SurfacePoint& b) {
  if (is_axial(a.face) || is_axial(b.face)) return {0.0, false, true};
  const double d = wrap_angle(b.angle - a.angle);
  if (d <= kPi) return {d, false, false};
  return {kTwoPi - d, true, false};
}

/// Rigid frame placing A's half-plane at angle 0 and B at +theta.
struct Frame {
  double origin = 0.0;
  bool mirrored = false;

  double to_local(double surface_angle) const {
    const double d = wrap_signed(surface_angle - origin);
    return mirrored ? -d : d;
  }
  double to_surface(double local_angle) const {
    return wrap_angle(origin + (mirrored ? -local_angle : local_angle));
  }
};

/// Position on the surface of revolution in R^3 (axis = z).
inline Vec3 embed3d(const SurfacePoint& point, const Surface& surface) {
  const SurfacePoint p = canonicalize(point, surface);
  const double c = std::cos(p.angle), sn = std::sin(p.angle);
  if (surface.is_can()) {
    switch (p.face) {
      case Face::Side: return {c, sn, p.height_or_slant};
      case Face::Rim1: return {c, sn, surface.h};
      case Face::Rim2: return {c, sn, 0.0};
      case Face::Lid: return {p.radial * c, p.radial * sn, surface.h};
      case Face::Base: return {p.radial * c, p.radial * sn, 0.0};
      case Face::LidCenter: return {0.0, 0.0, surface.h};
      case Face::BaseCenter: return {0.0, 0.0, 0.0};
      default: break;
    }
  } else {
    const double height = surface.cup_height();
    switch (p.face) {
      case Face::Side: {
        const double k = p.height_or_slant / surface.s;
        return {k * c, k * sn, height * (1.0 - k)};
      }
      case Face::Rim1: return {c, sn, 0.0};
      case Face::Lid: return {p.radial * c, p.radial * sn, 0.0};
      case Face::LidCenter: return {0.0, 0.0, 0.0};
      case Face::Apex: return {0.0, 0.0, height};
      default: break;
    }
  }
  throw Error(ErrorCode::InvalidPoint, "face not present on this surface");
}

/// Reflection across the plane through the axis at angle `plane_angle`.
inline SurfacePoint reflect(const SurfacePoint& p, double plane_angle) {
  SurfacePoint q = p;
  if (!is_axial(p.face)) q.angle = wrap_angle(2.0 * plane_angle - p.angle);
  return q;
}

/// True when the point belongs to the closed lid disk (rim T1 included).
inline bool in_lid_disk(Face f) { return f == Face::Lid || f == Face::LidCenter || f == Face::Rim1; }
inline bool in_base_disk(Face f) {
  return f == Face::Base || f == Face::BaseCenter || f == Face::Rim2;
}
/// True when the point belongs to the closed side (rims and apex included).
inline bool in_side(Face f) {
  return f == Face::Side || f == Face::Rim1 || f == Face::Rim2 || f == Face::Apex;
}

/// True when one point lies in the open disk bounded by `rim` and the other
/// lies off the closed disk, so every path between them meets the rim.
inline bool separated_by_rim(Face a, Face b, Face rim) {
  auto inside = [rim](Face f) {
    return rim == Face::Rim1 ? (f == Face::Lid || f == Face::LidCenter)
                             : (f == Face::Base || f == Face::BaseCenter);
  };
  auto outside = [rim](Face f) { return rim == Face::Rim1 ? !in_lid_disk(f) : !in_base_disk(f); };
  return (inside(a) && outside(b)) || (inside(b) && outside(a));
}

inline bool same_point(const SurfacePoint& a, const SurfacePoint& b, const Surface& surface) {
  return distance(embed3d(a, surface), embed3d(b, surface)) == 0.0;
}

}  // namespace cangeo
