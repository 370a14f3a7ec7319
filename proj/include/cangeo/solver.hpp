#pragma once

// End-to-end search for every minimal path between two surface points:
// enumerate the candidate families for the pair of faces, minimize each over
// its parameter box, keep every local minimum tied with the global one, add
// mirror images for diaxial pairs, and deduplicate geometrically.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cangeo/error.hpp"
#include "cangeo/families.hpp"
#include "cangeo/flatmodel.hpp"
#include "cangeo/geometry.hpp"
#include "cangeo/minimize.hpp"

namespace cangeo {

struct SolveConfig {
  int grid_n = 512;
  double tol = 1e-12;
  double tie_tol = 1e-9;
  /// Two paths are the same when their arc-length samples agree to this.
  double dedupe_tol = 1e-7;
  double straightness_tol = 1e-8;
  FamilyOptions families;
};

struct FamilyMinimum {
  std::vector<double> params;
  double value = 0.0;
};

struct FamilyReport {
  FamilyId id = FamilyId::HalfPlane;
  int dim = 0;
  FamilyMinimum best;
  std::vector<FamilyMinimum> local_minima;
};

struct ReportedPath {
  FamilyId family = FamilyId::HalfPlane;
  std::vector<double> params;
  bool mirror_image = false;
  GeodesicPath path;
  double defect = 0.0;
};

struct Multiplicity {
  bool infinite = false;
  int count = 0;
  std::string reason;
};

struct SolveReport {
  Surface surface;
  SurfacePoint a;
  SurfacePoint b;
  double theta = 0.0;
  double min_length = 0.0;
  std::vector<ReportedPath> paths;
  Multiplicity multiplicity;
  bool near_tie = false;
  /// Set when a finite count exceeds the known bound (4 on a can, 3 on a cup).
  bool bound_violated = false;
  std::vector<FamilyReport> per_family;
};

/// Evaluates one family over its box and returns every refined local minimum.
inline FamilyReport minimize_family(const Family& fam, const SolveConfig& cfg) {
  FamilyReport rep{fam.id, fam.dim, {}, {}};
  MinimizeOptions opt;
  opt.grid_n = fam.grid_n > 0 ? std::min(fam.grid_n, cfg.grid_n) : cfg.grid_n;
  opt.tol = cfg.tol;
  if (fam.grid_n > 0) opt.max_starts = 4;
  if (fam.dim == 0) {
    rep.local_minima.push_back({{}, fam.length(0.0, 0.0)});
  } else if (fam.dim == 1) {
    const auto res = minimize_1d([&](double t) { return fam.length(t, 0.0); }, 0.0, fam.theta, opt);
    for (const auto& m : res.minima) rep.local_minima.push_back({{m.x}, m.value});
  } else {
    const auto res = minimize_2d(fam.length, Box2{0.0, fam.theta, 0.0, fam.theta}, opt);
    for (const auto& m : res.minima) rep.local_minima.push_back({{m.x[0], m.x[1]}, m.value});
  }
  rep.best = rep.local_minima.front();
  return rep;
}

/// Largest distance between corresponding arc-length samples of two paths.
inline double path_separation(const GeodesicPath& p, const GeodesicPath& q, int samples = 16) {
  double worst = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double f = static_cast<double>(k) / samples;
    worst = std::max(worst, distance(embed3d(point_at_fraction(p, f), p.surface),
                                     embed3d(point_at_fraction(q, f), q.surface)));
  }
  return worst;
}

inline SolveReport solve(const Surface& surface, const SurfacePoint& a_in, const SurfacePoint& b_in,
                         const SolveConfig& cfg = {}) {
  Setup st;
  try {
    st = make_setup(surface, a_in, b_in);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPoint, e.what());
  }
  if (same_point(st.a, st.b, surface)) throw Error(ErrorCode::SamePoint, "A and B coincide");

  SolveReport rep;
  rep.surface = surface;
  rep.a = st.a;
  rep.b = st.b;
  rep.theta = st.theta;

  const std::vector<Family> fams = candidate_families(st, cfg.families);
  for (const auto& f : fams) rep.per_family.push_back(minimize_family(f, cfg));

  rep.min_length = rep.per_family.front().best.value;
  for (const auto& fr : rep.per_family) rep.min_length = std::min(rep.min_length, fr.best.value);
  for (const auto& fr : rep.per_family) {
    const double gap = fr.best.value - rep.min_length;
    if (gap > cfg.tie_tol && gap <= 10.0 * cfg.tie_tol) rep.near_tie = true;
  }

  const bool diaxial = !st.axial && std::abs(st.theta - kPi) < 1e-12;
  std::vector<ReportedPath> found;
  auto add = [&](ReportedPath rp) {
    for (const auto& other : found)
      if (path_separation(other.path, rp.path) < cfg.dedupe_tol) return;
    found.push_back(std::move(rp));
  };
  for (std::size_t i = 0; i < fams.size(); ++i) {
    for (const auto& m : rep.per_family[i].local_minima) {
      if (m.value > rep.min_length + cfg.tie_tol) continue;
      const double t = m.params.size() > 0 ? m.params[0] : 0.0;
      const double u = m.params.size() > 1 ? m.params[1] : 0.0;
      ReportedPath rp{fams[i].id, m.params, false, fams[i].rebuild(t, u), 0.0};
      rp.defect = geodesic_defect(rp.path);
      ReportedPath mirror = rp;
      add(std::move(rp));
      if (diaxial) {
        mirror.mirror_image = true;
        mirror.path = mirrored(std::move(mirror.path));
        add(std::move(mirror));
      }
    }
  }
  rep.paths = std::move(found);

  if (st.axial && is_axial(st.a.face) && is_axial(st.b.face)) {
    rep.multiplicity = {true, 0, "both endpoints are axial: every axial half-plane holds a minimal path"};
  } else {
    const int n = static_cast<int>(rep.paths.size());
    rep.multiplicity = {false, n, ""};
    rep.bound_violated = n > (surface.is_can() ? 4 : 3);
  }
  return rep;
}

}  // namespace cangeo
