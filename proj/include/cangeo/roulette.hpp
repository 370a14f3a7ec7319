#pragma once

// Roulettes of a unit circle rolling without slipping on a line (cycloid
// family) or outside a circle of radius R (epicycloid family). The generating
// point sits at distance `offset` from the rolling circle's center and starts
// at the contact point when offset = 1.

#include <cmath>
#include <limits>
#include <variant>

#include "cangeo/error.hpp"
#include "cangeo/geometry.hpp"
#include "cangeo/minimize.hpp"

namespace cangeo {

struct LineBase {};
struct CircleBase {
  double radius = 1.0;
};

struct RouletteTrace {
  std::variant<LineBase, CircleBase> fixed_curve = LineBase{};
  double rolling_radius = 1.0;
  double offset = 1.0;

  static RouletteTrace cycloid(double offset = 1.0) { return {LineBase{}, 1.0, offset}; }
  static RouletteTrace epicycloid(double fixed_radius, double offset = 1.0) {
    return {CircleBase{fixed_radius}, 1.0, offset};
  }

  bool on_line() const { return std::holds_alternative<LineBase>(fixed_curve); }
  double fixed_radius() const { return std::get<CircleBase>(fixed_curve).radius; }

  /// Roll parameter t (radians of the rolling circle) between cusps.
  double period() const { return kTwoPi * rolling_radius; }
};

/// Position, first and second derivatives of the roulette at roll angle t.
struct RouletteJet {
  Vec2 p, d1, d2;
  Vec2 contact;
};

inline RouletteJet roulette_jet(const RouletteTrace& r, double t) {
  const double rho = r.rolling_radius, d = r.offset;
  if (r.on_line()) {
    // Contact at x = rho t; center at (rho t, rho).
    const double s = std::sin(t), c = std::cos(t);
    return {{rho * t - d * s, rho - d * c}, {rho - d * c, d * s}, {d * s, d * c}, {rho * t, 0.0}};
  }
  // Rolling outside a circle of radius R: the contact angle is alpha = rho t / R
  // and the rolling circle has turned by (R + rho) / rho * alpha.
  const double R = r.fixed_radius();
  const double k = rho / R;
  const double alpha = k * t;
  const double m = (R + rho) / rho;
  const double beta = m * alpha;
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double c0 = R + rho;
  RouletteJet j;
  j.p = {c0 * ca - d * cb, c0 * sa - d * sb};
  j.d1 = {-c0 * k * sa + d * m * k * sb, c0 * k * ca - d * m * k * cb};
  j.d2 = {-c0 * k * k * ca + d * m * m * k * k * cb, -c0 * k * k * sa + d * m * m * k * k * sb};
  j.contact = {R * ca, R * sa};
  return j;
}

inline Vec2 trace_point(const RouletteTrace& r, double t) { return roulette_jet(r, t).p; }

/// Signed curvature at roll angle t (infinite at a cusp).
inline double roulette_curvature(const RouletteTrace& r, double t) {
  const RouletteJet j = roulette_jet(r, t);
  const double speed = norm(j.d1);
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return cross(j.d1, j.d2) / (speed * speed * speed);
}

/// Cosine of the angle between the tangent at t and the direction to the
/// contact point; zero when the normal line passes through the contact.
inline double normal_line_defect(const RouletteTrace& r, double t, double min_speed = 1e-9) {
  const RouletteJet j = roulette_jet(r, t);
  const double speed = norm(j.d1);
  if (speed <= min_speed) throw Error(ErrorCode::CuspParameter, "roulette speed vanishes");
  const Vec2 to_contact = j.contact - j.p;
  const double dist = norm(to_contact);
  if (dist == 0.0) throw Error(ErrorCode::CuspParameter, "generator at the contact point");
  return std::abs(dot(j.d1, to_contact)) / (speed * dist);
}

inline constexpr double kCuspExclusion = 1e-6;

/// Maximum radius of curvature over one cusp-to-cusp arch of the epicycloid
/// traced by a rim point of a unit circle rolling outside a circle of radius R.
inline double max_radius_of_curvature(double fixed_radius, int grid = 4096) {
  if (!(fixed_radius > 0.0)) throw Error(ErrorCode::OutOfRange, "fixed radius must be positive");
  const RouletteTrace trace = RouletteTrace::epicycloid(fixed_radius);
  const double lo = kCuspExclusion, hi = trace.period() - kCuspExclusion;
  auto neg_radius = [&](double t) { return -1.0 / std::abs(roulette_curvature(trace, t)); };
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double t = lo + (hi - lo) * i / grid;
    const double v = neg_radius(t);
    if (v < best_v) best_v = v, best = i;
  }
  const double step = (hi - lo) / grid;
  const double a = std::max(lo, lo + (best - 1) * step);
  const double b = std::min(hi, lo + (best + 1) * step);
  const double t = golden_section(neg_radius, a, b, 1e-12);
  return -std::min(neg_radius(t), best_v);
}

}  // namespace cangeo
