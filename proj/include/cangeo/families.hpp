#pragma once

// Candidate families of piecewise-geodesic paths. Each family is a set of
// genuine paths from A to B parametrized by rim-crossing angles in [0, theta]
// with a closed-form length; a minimal path lies in the union of the
// families applicable to the pair of faces.
//
// Every functional works in the frame where A sits at angle 0 and B at
// angle theta in [0, pi]. Over-rim families cross the first rim at angle t
// (measured from A) and the second at theta - u (u measured from B).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cangeo/error.hpp"
#include "cangeo/flatmodel.hpp"
#include "cangeo/geometry.hpp"
#include "cangeo/minimize.hpp"

namespace cangeo {

enum class FamilyId {
  HalfPlane,
  CanSideDirect,
  CanSideOverLid,
  CanSideOverBase,
  CanSideToLid,
  CanSideToLidViaBase,
  CanLidToBase,
  CupSideDirect,
  CupSideOverLid,
  CupSideToLid,
  LidChord,
  BaseChord,
  CupLidChord,
};

inline const char* to_string(FamilyId id) {
  switch (id) {
    case FamilyId::HalfPlane: return "HalfPlane";
    case FamilyId::CanSideDirect: return "CanSideDirect";
    case FamilyId::CanSideOverLid: return "CanSideOverLid";
    case FamilyId::CanSideOverBase: return "CanSideOverBase";
    case FamilyId::CanSideToLid: return "CanSideToLid";
    case FamilyId::CanSideToLidViaBase: return "CanSideToLidViaBase";
    case FamilyId::CanLidToBase: return "CanLidToBase";
    case FamilyId::CupSideDirect: return "CupSideDirect";
    case FamilyId::CupSideOverLid: return "CupSideOverLid";
    case FamilyId::CupSideToLid: return "CupSideToLid";
    case FamilyId::LidChord: return "LidChord";
    case FamilyId::BaseChord: return "BaseChord";
    case FamilyId::CupLidChord: return "CupLidChord";
  }
  return "?";
}

/// Which angle the lid-to-base crossing parameters are measured from.
/// FromB: lid crossing at theta - t, base crossing at u (literal reading of
/// the published functional). FromA: lid crossing at t, base crossing at
/// theta - u. Both describe the same set of paths.
enum class LidBaseConvention { FromB, FromA };

// ---------------------------------------------------------------------------
// Length functionals

namespace detail {

inline void check_box(double p, double theta) {
  if (!(p >= 0.0 && p <= theta)) throw Error(ErrorCode::ParamOutOfBox, "parameter outside [0, theta]");
}

/// sqrt(r^2 - 2 r cos(angle) + 1): chord from a rim point to a disk point at
/// radius r subtending `angle`.
inline double disk_chord(double r, double angle) {
  const double s = std::sin(0.5 * angle);
  return std::sqrt((1.0 - r) * (1.0 - r) + 4.0 * r * s * s);
}

/// sqrt(2 - 2 cos(angle)): chord between two rim points.
inline double rim_chord(double angle) { return 2.0 * std::abs(std::sin(0.5 * angle)); }

/// sqrt(a^2 - 2 a b cos(angle/s) + b^2): side geodesic on a cone between
/// slants a and b subtending `angle` about the axis.
inline double cone_chord(double a, double b, double s, double angle) {
  const double sn = std::sin(0.5 * angle / s);
  return std::sqrt((a - b) * (a - b) + 4.0 * a * b * sn * sn);
}

}  // namespace detail

/// Side point A at distance a below rim T1 to lid point B at radius b,
/// crossing T1 at angle t.
inline double can_side_to_lid_length(double a, double b, double theta, double t) {
  detail::check_box(t, theta);
  return std::hypot(a, t) + detail::disk_chord(b, theta - t);
}

/// Cup side point at slant a to lid point at radius b, crossing the rim at t.
inline double cup_side_to_lid_length(double a, double b, double s, double theta, double t) {
  detail::check_box(t, theta);
  return detail::cone_chord(a, s, s, t) + detail::disk_chord(b, theta - t);
}

/// Side to side across the lid; a, b are distances below rim T1.
inline double can_side_over_lid_length(double a, double b, double theta, double t, double u) {
  detail::check_box(t, theta);
  detail::check_box(u, theta);
  return std::hypot(a, t) + std::hypot(b, u) + detail::rim_chord(theta - t - u);
}

/// Side to side across the base; a, b are distances below rim T1.
inline double can_side_over_base_length(double a, double b, double h, double theta, double t,
                                        double u) {
  return can_side_over_lid_length(h - a, h - b, theta, t, u);
}

/// Cup side to side across the lid; a, b are slants.
inline double cup_side_over_lid_length(double a, double b, double s, double theta, double t,
                                       double u) {
  detail::check_box(t, theta);
  detail::check_box(u, theta);
  return detail::cone_chord(a, s, s, t) + detail::cone_chord(b, s, s, u) +
         detail::rim_chord(theta - t - u);
}

/// Lid point at radius a to base point at radius b: lid chord, side
/// geodesic, base chord.
inline double can_lid_to_base_length(double a, double b, double h, double theta, double t,
                                     double u,
                                     LidBaseConvention conv = LidBaseConvention::FromB) {
  detail::check_box(t, theta);
  detail::check_box(u, theta);
  const double lid_angle = conv == LidBaseConvention::FromB ? theta - t : t;
  const double base_angle = conv == LidBaseConvention::FromB ? u : theta - u;
  return detail::disk_chord(a, lid_angle) + detail::disk_chord(b, theta - base_angle) +
         std::hypot(h, theta - t - u);
}

/// Side point at height zA down to the base at t, across the base to v, up
/// the side to the best lid crossing, then to lid point at radius b.
inline double can_side_to_lid_via_base_length(double z_a, double b, double h, double theta,
                                              double t, double v, int inner_grid = 32,
                                              double* best_w = nullptr) {
  detail::check_box(t, theta);
  detail::check_box(v, theta);
  auto ascent = [&](double w) { return std::hypot(h, w - v) + detail::disk_chord(b, theta - w); };
  MinimizeOptions opt;
  opt.grid_n = inner_grid;
  opt.max_starts = 4;
  const auto inner = minimize_1d(ascent, 0.0, theta, opt).global();
  if (best_w) *best_w = inner.x;
  return std::hypot(z_a, t) + detail::rim_chord(v - t) + inner.value;
}

/// Length of the straight geodesic on the side between two side points.
inline double direct_side_length(const SurfacePoint& a_in, const SurfacePoint& b_in,
                                 const Surface& surface) {
  const SurfacePoint a = canonicalize(a_in, surface), b = canonicalize(b_in, surface);
  if (!in_side(a.face) || !in_side(b.face))
    throw Error(ErrorCode::FaceMismatch, "direct side path needs two side points");
  const double theta = angle_gap(a, b).theta;
  if (surface.is_can()) return std::hypot(a.height_or_slant - b.height_or_slant, theta);
  const double sa = a.face == Face::Apex ? 0.0 : a.height_or_slant;
  const double sb = b.face == Face::Apex ? 0.0 : b.height_or_slant;
  return detail::cone_chord(sa, sb, surface.s, theta);
}

// ---------------------------------------------------------------------------
// Families

struct Family {
  FamilyId id = FamilyId::HalfPlane;
  int dim = 0;
  double theta = 0.0;  // box is [0, theta]^dim
  std::function<double(double, double)> length;
  std::function<GeodesicPath(double, double)> rebuild;
  /// Grid resolution override for expensive families (0 = solver default).
  int grid_n = 0;
};

/// A, B canonicalized and placed in the normalizing frame.
struct Setup {
  Surface surface;
  SurfacePoint a;
  SurfacePoint b;
  Frame frame;
  double theta = 0.0;
  bool axial = false;
};

inline Setup make_setup(const Surface& surface, const SurfacePoint& a_in, const SurfacePoint& b_in) {
  Setup s;
  s.surface = surface;
  s.a = canonicalize(a_in, surface);
  s.b = canonicalize(b_in, surface);
  const AngleGap gap = angle_gap(s.a, s.b);
  s.theta = gap.theta;
  s.axial = gap.axial;
  s.frame.mirrored = gap.mirror;
  s.frame.origin = !is_axial(s.a.face) ? s.a.angle : !is_axial(s.b.face) ? s.b.angle : 0.0;
  return s;
}

struct FamilyOptions {
  LidBaseConvention lid_base = LidBaseConvention::FromB;
  int via_base_grid = 64;
  int via_base_inner_grid = 32;
};

namespace detail {

inline Vec2 polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }

/// Side chart point at local angle and height (can) or slant (cup).
inline Vec2 side_chart(const Surface& s, double angle, double coord) {
  if (s.is_can()) return {angle, coord};
  return polar(coord, angle / s.s);
}

inline double can_z(const SurfacePoint& p) { return p.height_or_slant; }

inline double cup_slant(const SurfacePoint& p) { return p.face == Face::Apex ? 0.0 : p.height_or_slant; }

/// Meridian coordinate of a point in its axial half-plane, measured from the
/// base center (can) or the apex (cup).
inline double meridian(const SurfacePoint& p, const Surface& s) {
  if (s.is_can()) {
    if (in_base_disk(p.face) && p.face != Face::Rim2) return p.radial;
    if (in_lid_disk(p.face) && p.face != Face::Rim1) return 2.0 + s.h - p.radial;
    return 1.0 + p.height_or_slant;
  }
  if (p.face == Face::Lid || p.face == Face::LidCenter) return s.s + 1.0 - p.radial;
  return cup_slant(p);
}

/// Chart position of meridian coordinate m at local angle 0, and its face.
inline std::pair<Face, Vec2> meridian_chart(double m, const Surface& s, Face prefer) {
  if (s.is_can()) {
    if (m < 1.0 || (m == 1.0 && prefer == Face::Base)) return {Face::Base, {m, 0.0}};
    if (m > 1.0 + s.h || (m == 1.0 + s.h && prefer == Face::Lid))
      return {Face::Lid, {2.0 + s.h - m, 0.0}};
    return {Face::Side, {0.0, m - 1.0}};
  }
  if (m > s.s || (m == s.s && prefer == Face::Lid)) return {Face::Lid, {s.s + 1.0 - m, 0.0}};
  return {Face::Side, {m, 0.0}};
}

inline GeodesicPath half_plane_path(const Setup& st) {
  const Surface& s = st.surface;
  const double ma = meridian(st.a, s), mb = meridian(st.b, s);
  std::vector<double> cuts{ma};
  const std::vector<double> rims = s.is_can() ? std::vector<double>{1.0, 1.0 + s.h}
                                              : std::vector<double>{s.s};
  if (ma <= mb) {
    for (double r : rims)
      if (r > ma && r < mb) cuts.push_back(r);
  } else {
    for (auto it = rims.rbegin(); it != rims.rend(); ++it)
      if (*it < ma && *it > mb) cuts.push_back(*it);
  }
  cuts.push_back(mb);
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const Face face = meridian_chart(mid, s, Face::Side).first;
    segs.push_back({face, meridian_chart(cuts[i], s, face).second,
                    meridian_chart(cuts[i + 1], s, face).second});
  }
  Frame frame = st.frame;
  frame.mirrored = false;
  return make_path(s, frame, std::move(segs));
}

inline Setup swapped(const Setup& st) {
  Setup s = make_setup(st.surface, st.b, st.a);
  return s;
}

inline SurfacePoint flip_point(const SurfacePoint& p, const Surface& s) {
  SurfacePoint q = p;
  switch (p.face) {
    case Face::Lid: q.face = Face::Base; break;
    case Face::Base: q.face = Face::Lid; break;
    case Face::LidCenter: q.face = Face::BaseCenter; break;
    case Face::BaseCenter: q.face = Face::LidCenter; break;
    case Face::Rim1: q.face = Face::Rim2; break;
    case Face::Rim2: q.face = Face::Rim1; break;
    default: break;
  }
  if (in_side(q.face)) q.height_or_slant = s.h - p.height_or_slant;
  return q;
}

inline Setup flipped(const Setup& st) {
  Setup s = st;
  s.a = flip_point(st.a, st.surface);
  s.b = flip_point(st.b, st.surface);
  return s;
}

/// Wraps every family of `inner` so that rebuilt paths run from the original
/// A to B after a role swap and/or vertical flip.
inline void adapt(std::vector<Family>& fams, bool swap, bool flip) {
  for (auto& f : fams) {
    auto rebuild = f.rebuild;
    f.rebuild = [rebuild, swap, flip](double t, double u) {
      GeodesicPath p = rebuild(t, u);
      if (flip) p = flipped_vertically(std::move(p));
      if (swap) p = reversed(std::move(p));
      return p;
    };
  }
}

// --- can ---------------------------------------------------------------

inline std::vector<Family> can_side_side(const Setup& st) {
  const Surface S = st.surface;
  const Frame F = st.frame;
  const double th = st.theta, h = S.h;
  const double za = can_z(st.a), zb = can_z(st.b);
  const double a = h - za, b = h - zb;
  std::vector<Family> out;
  out.push_back({FamilyId::CanSideDirect, 0, th,
                 [=](double, double) { return std::hypot(za - zb, th); },
                 [=](double, double) {
                   return make_path(S, F, {{Face::Side, {0.0, za}, {th, zb}}});
                 }});
  out.push_back({FamilyId::CanSideOverLid, 2, th,
                 [=](double t, double u) { return can_side_over_lid_length(a, b, th, t, u); },
                 [=](double t, double u) {
                   check_box(t, th), check_box(u, th);
                   return make_path(S, F,
                                    {{Face::Side, {0.0, za}, {t, h}},
                                     {Face::Lid, polar(1.0, t), polar(1.0, th - u)},
                                     {Face::Side, {th - u, h}, {th, zb}}});
                 }});
  out.push_back({FamilyId::CanSideOverBase, 2, th,
                 [=](double t, double u) { return can_side_over_base_length(a, b, h, th, t, u); },
                 [=](double t, double u) {
                   check_box(t, th), check_box(u, th);
                   return make_path(S, F,
                                    {{Face::Side, {0.0, za}, {t, 0.0}},
                                     {Face::Base, polar(1.0, t), polar(1.0, th - u)},
                                     {Face::Side, {th - u, 0.0}, {th, zb}}});
                 }});
  return out;
}

/// A on the side (not on rim T1), B inside the lid.
inline std::vector<Family> can_side_lid(const Setup& st, const FamilyOptions& opt) {
  const Surface S = st.surface;
  const Frame F = st.frame;
  const double th = st.theta, h = S.h;
  const double za = can_z(st.a), a = h - za, b = st.b.radial;
  const int inner = opt.via_base_inner_grid;
  std::vector<Family> out;
  out.push_back({FamilyId::CanSideToLid, 1, th,
                 [=](double t, double) { return can_side_to_lid_length(a, b, th, t); },
                 [=](double t, double) {
                   check_box(t, th);
                   return make_path(S, F,
                                    {{Face::Side, {0.0, za}, {t, h}},
                                     {Face::Lid, polar(1.0, t), polar(b, th)}});
                 }});
  Family via{FamilyId::CanSideToLidViaBase, 2, th,
             [=](double t, double v) {
               return can_side_to_lid_via_base_length(za, b, h, th, t, v, inner);
             },
             [=](double t, double v) {
               double w = 0.0;
               can_side_to_lid_via_base_length(za, b, h, th, t, v, inner, &w);
               return make_path(S, F,
                                {{Face::Side, {0.0, za}, {t, 0.0}},
                                 {Face::Base, polar(1.0, t), polar(1.0, v)},
                                 {Face::Side, {v, 0.0}, {w, h}},
                                 {Face::Lid, polar(1.0, w), polar(b, th)}});
             }};
  via.grid_n = opt.via_base_grid;
  out.push_back(std::move(via));
  return out;
}

inline std::vector<Family> can_lid_base(const Setup& st, const FamilyOptions& opt) {
  const Surface S = st.surface;
  const Frame F = st.frame;
  const double th = st.theta, h = S.h;
  const double a = st.a.radial, b = st.b.radial;
  const LidBaseConvention conv = opt.lid_base;
  return {{FamilyId::CanLidToBase, 2, th,
           [=](double t, double u) { return can_lid_to_base_length(a, b, h, th, t, u, conv); },
           [=](double t, double u) {
             check_box(t, th), check_box(u, th);
             const double p = conv == LidBaseConvention::FromB ? th - t : t;
             const double q = conv == LidBaseConvention::FromB ? u : th - u;
             return make_path(S, F,
                              {{Face::Lid, polar(a, 0.0), polar(1.0, p)},
                               {Face::Side, {p, h}, {q, 0.0}},
                               {Face::Base, polar(1.0, q), polar(b, th)}});
           }}};
}

inline Family disk_chord_family(const Setup& st, FamilyId id, Face disk) {
  const Surface S = st.surface;
  const Frame F = st.frame;
  const Vec2 pa = chart_point(st.a, disk, S, F), pb = chart_point(st.b, disk, S, F);
  return {id, 0, st.theta, [=](double, double) { return distance(pa, pb); },
          [=](double, double) { return make_path(S, F, {{disk, pa, pb}}); }};
}

// --- cup ---------------------------------------------------------------

inline std::vector<Family> cup_side_side(const Setup& st) {
  const Surface S = st.surface;
  const Frame F = st.frame;
  const double th = st.theta, s = S.s;
  const double a = cup_slant(st.a), b = cup_slant(st.b);
  std::vector<Family> out;
  out.push_back({FamilyId::CupSideDirect, 0, th,
                 [=](double, double) { return cone_chord(a, b, s, th); },
                 [=](double, double) {
                   return make_path(S, F, {{Face::Side, side_chart(S, 0.0, a), side_chart(S, th, b)}});
                 }});
  out.push_back({FamilyId::CupSideOverLid, 2, th,
                 [=](double t, double u) { return cup_side_over_lid_length(a, b, s, th, t, u); },
                 [=](double t, double u) {
                   check_box(t, th), check_box(u, th);
                   return make_path(S, F,
                                    {{Face::Side, side_chart(S, 0.0, a), side_chart(S, t, s)},
                                     {Face::Lid, polar(1.0, t), polar(1.0, th - u)},
                                     {Face::Side, side_chart(S, th - u, s), side_chart(S, th, b)}});
                 }});
  return out;
}

inline std::vector<Family> cup_side_lid(const Setup& st) {
  const Surface S = st.surface;
  const Frame F = st.frame;
  const double th = st.theta, s = S.s;
  const double a = cup_slant(st.a), b = st.b.radial;
  return {{FamilyId::CupSideToLid, 1, th,
           [=](double t, double) { return cup_side_to_lid_length(a, b, s, th, t); },
           [=](double t, double) {
             check_box(t, th);
             return make_path(S, F,
                              {{Face::Side, side_chart(S, 0.0, a), side_chart(S, t, s)},
                               {Face::Lid, polar(1.0, t), polar(b, th)}});
           }}};
}

}  // namespace detail

/// Families whose union contains a minimal path from A to B. Axial or
/// same-half-plane configurations (theta = 0) reduce to the single
/// half-plane path.
inline std::vector<Family> candidate_families(const Setup& st, const FamilyOptions& opt = {}) {
  using namespace detail;
  const Surface& S = st.surface;
  const Face fa = st.a.face, fb = st.b.face;
  if (st.axial || st.theta == 0.0) {
    return {{FamilyId::HalfPlane, 0, 0.0,
             [st](double, double) { return half_plane_path(st).total_length; },
             [st](double, double) { return half_plane_path(st); }}};
  }
  std::vector<Family> out;
  if (S.is_cup()) {
    if (in_lid_disk(fa) && in_lid_disk(fb)) return {disk_chord_family(st, FamilyId::CupLidChord, Face::Lid)};
    if (in_side(fa) && in_side(fb)) return cup_side_side(st);
    if (in_side(fa)) return cup_side_lid(st);
    out = cup_side_lid(swapped(st));
    adapt(out, true, false);
    return out;
  }
  if (in_lid_disk(fa) && in_lid_disk(fb)) return {disk_chord_family(st, FamilyId::LidChord, Face::Lid)};
  if (in_base_disk(fa) && in_base_disk(fb))
    return {disk_chord_family(st, FamilyId::BaseChord, Face::Base)};
  if (in_side(fa) && in_side(fb)) return can_side_side(st);
  const bool a_side = in_side(fa), b_side = in_side(fb);
  if (a_side || b_side) {
    const bool swap = !a_side;
    Setup s = swap ? swapped(st) : st;
    const bool flip = in_base_disk(s.b.face);
    if (flip) s = flipped(s);
    out = can_side_lid(s, opt);
    adapt(out, swap, flip);
    return out;
  }
  // One point strictly inside the lid, the other strictly inside the base.
  const bool swap = in_base_disk(fa);
  out = can_lid_base(swap ? swapped(st) : st, opt);
  adapt(out, swap, false);
  return out;
}

}  // namespace cangeo
