#pragma once

// Critical configurations at which competing path families tie: diaxial
// side points on a can, the three-path partner on a cup, and the rim-chord
// angle equation theta - sin(theta) = BP (1 - cos(theta)).

#include <cmath>

#include "cangeo/error.hpp"
#include "cangeo/geometry.hpp"
#include "cangeo/roulette.hpp"

namespace cangeo {

struct SideDiaxialCritical {
  double c = 0.0;  // depth of A below the lid
  double d = 0.0;  // depth of B below the lid, d = h - c
  double h = 0.0;
};

/// Can height at which diaxial side points at depths c and h - c are joined
/// by four minimal paths.
inline SideDiaxialCritical critical_height_side_diaxial(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::NoSolution, "depth c must be >= 0");
  const double h = (kPi * kPi + 4.0 * c * c - 4.0) / (4.0 * c + 4.0);
  const double d = h - c;
  if (d < 0.0) throw Error(ErrorCode::NoSolution, "partner depth h - c is negative");
  return {c, d, h};
}

/// Minimum slant of A for which the three-path construction applies.
inline double cup_three_path_threshold(double s) { return s - max_radius_of_curvature(s) + 2.0; }

/// Slant of the diaxial partner B that ties the two side geodesics with the
/// path across the lid diameter.
inline double cup_three_path_partner(double s, double a) {
  if (!(s > 1.0)) throw Error(ErrorCode::OutOfRange, "slant height must exceed 1");
  if (!(a > 0.0 && a <= s)) throw Error(ErrorCode::PartnerOffSurface, "A must lie on the side");
  const double threshold = cup_three_path_threshold(s);
  if (a < threshold - 1e-12)
    throw Error(ErrorCode::HypothesisViolated, "a is below s - r_max + 2");
  const double b = 2.0 * (s - a + 1.0) * (s + 1.0) / (2.0 * s + 2.0 - a * (1.0 + std::cos(kPi / s)));
  if (!(b > 0.0 && b <= s + 1e-12))
    throw Error(ErrorCode::PartnerOffSurface, "partner slant outside (0, s]");
  return std::min(b, s);
}

/// Residual of (2s - a - b + 2)^2 = a^2 - 2ab cos(pi/s) + b^2.
inline double cup_three_path_residual(double s, double a, double b) {
  const double lhs = 2.0 * s - a - b + 2.0;
  return lhs * lhs - (a * a - 2.0 * a * b * std::cos(kPi / s) + b * b);
}

struct RimChordRoot {
  double theta = 0.0;
  double residual = 0.0;
  bool has_height = false;  // sin(theta) > 0
  double h = 0.0;           // 2 BP sin(theta)
  bool beyond_pi = false;
};

inline double rim_chord_residual(double bp, double theta) {
  return theta - std::sin(theta) - bp * (1.0 - std::cos(theta));
}

/// Smallest nontrivial root of theta - sin(theta) = BP (1 - cos(theta)) on
/// (0, 2pi), by scanning for a sign change and bisecting.
inline RimChordRoot solve_rim_chord_theta(double bp, int scan = 1000, int max_iter = 200) {
  if (!(bp > 0.0) || !std::isfinite(bp)) throw Error(ErrorCode::NoPositiveRoot, "BP must be positive");
  constexpr double kSkip = 1e-6;
  auto f = [bp](double t) { return rim_chord_residual(bp, t); };
  double lo = kSkip, flo = f(lo);
  for (int i = 1; i <= scan; ++i) {
    const double hi = kSkip + (kTwoPi - kSkip) * i / scan;
    const double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, std::sin(lo) > 0.0, 2.0 * bp * std::sin(lo), lo >= kPi};
    if ((flo < 0.0) != (fhi < 0.0) || fhi == 0.0) {
      double a = lo, b = hi, fa = flo;
      for (int k = 0; k < max_iter && b - a > 0.0; ++k) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double theta = std::abs(f(a)) <= std::abs(f(b)) ? a : b;
      RimChordRoot r{theta, f(theta), std::sin(theta) > 0.0, 0.0, theta >= kPi};
      if (r.has_height) r.h = 2.0 * bp * std::sin(theta);
      return r;
    }
    lo = hi;
    flo = fhi;
  }
  throw Error(ErrorCode::NoPositiveRoot, "no sign change on (0, 2pi)");
}

}  // namespace cangeo
