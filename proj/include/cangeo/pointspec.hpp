#pragma once

// Text forms for surfaces and points:
//   can:h=<f>   cup:s=<f>
//   side:angle=<rad>,z=<len>     side:angle=<rad>,slant=<len>
//   lid:angle=<rad>,r=<len>      base:angle=<rad>,r=<len>
//   rim1:angle=<rad>  rim2:angle=<rad>  rim:angle=<rad>
//   apex  lidcenter  basecenter

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "cangeo/error.hpp"
#include "cangeo/geometry.hpp"

namespace cangeo {

namespace detail {

inline double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty() || !std::isfinite(v))
    throw Error(ErrorCode::ParseError, "bad number for " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

/// Splits "key=v,key=v" into a map, rejecting duplicates and unknown keys.
inline std::map<std::string, double> parse_fields(std::string_view body, const std::set<std::string>& allowed,
                                                  std::string_view spec) {
  std::map<std::string, double> out;
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    const std::string_view item = body.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "expected key=value in '" + std::string(spec) + "'");
    const std::string key(item.substr(0, eq));
    if (!allowed.count(key))
      throw Error(ErrorCode::ParseError, "unknown field '" + key + "' in '" + std::string(spec) + "'");
    if (!out.emplace(key, parse_number(item.substr(eq + 1), key)).second)
      throw Error(ErrorCode::ParseError, "duplicate field '" + key + "' in '" + std::string(spec) + "'");
    pos = comma + 1;
  }
  return out;
}

inline double need(const std::map<std::string, double>& f, const std::string& key, std::string_view spec) {
  const auto it = f.find(key);
  if (it == f.end()) throw Error(ErrorCode::ParseError, "missing '" + key + "' in '" + std::string(spec) + "'");
  return it->second;
}

}  // namespace detail

inline Surface parse_surface(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  try {
    if (kind == "can") return Surface::can(detail::need(detail::parse_fields(body, {"h"}, spec), "h", spec));
    if (kind == "cup") return Surface::cup(detail::need(detail::parse_fields(body, {"s"}, spec), "s", spec));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, std::string(e.what()) + " in '" + std::string(spec) + "'");
  }
  throw Error(ErrorCode::ParseError, "unknown surface '" + std::string(spec) + "'");
}

/// Parses a point; with `degrees` the angle field is read in degrees.
inline SurfacePoint parse_point(std::string_view spec, bool degrees = false) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto angle = [&](const std::map<std::string, double>& f) {
    const double a = detail::need(f, "angle", spec);
    return degrees ? a * kPi / 180.0 : a;
  };
  if (kind == "apex" || kind == "lidcenter" || kind == "basecenter") {
    if (colon != std::string_view::npos)
      throw Error(ErrorCode::ParseError, "'" + std::string(kind) + "' takes no fields");
    if (kind == "apex") return SurfacePoint::apex();
    return kind == "lidcenter" ? SurfacePoint::lid_center() : SurfacePoint::base_center();
  }
  if (kind == "side") {
    const auto f = detail::parse_fields(body, {"angle", "z", "slant"}, spec);
    if (f.count("z") == f.count("slant"))
      throw Error(ErrorCode::ParseError, "side point needs exactly one of z, slant");
    return SurfacePoint::side(angle(f), f.count("z") ? f.at("z") : f.at("slant"));
  }
  if (kind == "lid" || kind == "base") {
    const auto f = detail::parse_fields(body, {"angle", "r"}, spec);
    const double r = detail::need(f, "r", spec);
    return kind == "lid" ? SurfacePoint::lid(angle(f), r) : SurfacePoint::base(angle(f), r);
  }
  if (kind == "rim1" || kind == "rim" || kind == "rim2") {
    const auto f = detail::parse_fields(body, {"angle"}, spec);
    return kind == "rim2" ? SurfacePoint::rim2(angle(f)) : SurfacePoint::rim1(angle(f));
  }
  throw Error(ErrorCode::ParseError, "unknown point kind in '" + std::string(spec) + "'");
}

/// Parses a point and checks it against the surface (ParseError on failure).
inline SurfacePoint parse_point_on(std::string_view spec, const Surface& surface, bool degrees = false) {
  const SurfacePoint p = parse_point(spec, degrees);
  if (p.face == Face::Side) {
    const bool slant = spec.find("slant=") != std::string_view::npos;
    if (slant != surface.is_cup())
      throw Error(ErrorCode::ParseError, surface.is_cup() ? "cup side points take slant=, not z="
                                                          : "can side points take z=, not slant=");
  }
  try {
    return canonicalize(p, surface);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, std::string(e.what()) + " in '" + std::string(spec) + "'");
  }
}

}  // namespace cangeo
