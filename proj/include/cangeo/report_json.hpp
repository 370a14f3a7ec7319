#pragma once

// JSON views of surfaces, points, paths and solve reports. Field order is
// fixed so repeated runs print byte-identical documents.

#include <json.hpp>

#include "cangeo/critical.hpp"
#include "cangeo/flatmodel.hpp"
#include "cangeo/geometry.hpp"
#include "cangeo/solver.hpp"

namespace cangeo {

using Json = nlohmann::ordered_json;

inline Json to_json(const Surface& s) {
  Json j;
  if (s.is_can()) {
    j["kind"] = "can";
    j["h"] = s.h;
  } else {
    j["kind"] = "cup";
    j["s"] = s.s;
    j["height"] = s.cup_height();
  }
  return j;
}

inline Json to_json(Vec2 v) { return Json::array({v.x, v.y}); }
inline Json to_json(Vec3 v) { return Json::array({v.x, v.y, v.z}); }

inline Json to_json(const SurfacePoint& p, const Surface& s) {
  Json j;
  j["face"] = to_string(p.face);
  j["angle"] = p.angle;
  j["radial"] = p.radial;
  j["height_or_slant"] = p.height_or_slant;
  j["xyz"] = to_json(embed3d(p, s));
  return j;
}

inline const char* to_string(LidBaseConvention c) {
  return c == LidBaseConvention::FromB ? "from-b" : "from-a";
}

inline Json to_json(const GeodesicPath& path, double samples_per_unit = 16.0) {
  Json j;
  j["length"] = path.total_length;
  j["frame"] = {{"origin", path.frame.origin}, {"mirrored", path.frame.mirrored}};
  Json segs = Json::array();
  for (const auto& seg : path.segments)
    segs.push_back({{"face", to_string(seg.face)}, {"from", to_json(seg.from)}, {"to", to_json(seg.to)},
                    {"length", seg.length()}});
  j["segments"] = segs;
  Json cross = Json::array();
  for (const auto& c : path.crossings) cross.push_back({{"rim", to_string(c.face)}, {"angle", c.angle}});
  j["crossings"] = cross;
  Json poly = Json::array();
  for (const auto& q : path_to_polyline(path, samples_per_unit)) poly.push_back(to_json(q));
  j["polyline"] = poly;
  return j;
}

inline Json to_json(const FamilyMinimum& m) { return {{"params", m.params}, {"value", m.value}}; }

inline Json to_json(const SolveReport& r, const SolveConfig& cfg) {
  Json j;
  j["surface"] = to_json(r.surface);
  j["A"] = to_json(r.a, r.surface);
  j["B"] = to_json(r.b, r.surface);
  j["theta"] = r.theta;
  j["min_length"] = r.min_length;
  j["multiplicity"] = {{"infinite", r.multiplicity.infinite},
                       {"count", r.multiplicity.count},
                       {"reason", r.multiplicity.reason},
                       {"bound_violated", r.bound_violated}};
  j["near_tie"] = r.near_tie;
  Json paths = Json::array();
  for (const auto& p : r.paths) {
    Json pj;
    pj["family"] = to_string(p.family);
    pj["params"] = p.params;
    pj["mirror_image"] = p.mirror_image;
    pj["length"] = p.path.total_length;
    pj["defect"] = p.defect;
    const Json body = to_json(p.path);
    for (auto it = body.begin(); it != body.end(); ++it)
      if (it.key() != "length") pj[it.key()] = it.value();
    paths.push_back(pj);
  }
  j["paths"] = paths;
  Json fams = Json::array();
  for (const auto& f : r.per_family) {
    Json mins = Json::array();
    for (const auto& m : f.local_minima) mins.push_back(to_json(m));
    fams.push_back({{"family", to_string(f.id)}, {"dim", f.dim}, {"best", to_json(f.best)}, {"local_minima", mins}});
  }
  j["per_family"] = fams;
  j["config"] = {{"grid", cfg.grid_n},
                 {"tol", cfg.tol},
                 {"tie_tol", cfg.tie_tol},
                 {"dedupe_tol", cfg.dedupe_tol},
                 {"straightness_tol", cfg.straightness_tol},
                 {"lid_base_convention", to_string(cfg.families.lid_base)}};
  return j;
}

}  // namespace cangeo
