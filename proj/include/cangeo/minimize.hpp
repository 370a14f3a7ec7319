#pragma once

// Global minimization of smooth functionals on intervals and rectangles:
// a uniform grid scan locates every basin, golden-section refinement (along
// coordinate and diagonal directions in 2-D) descends into each, and a short
// Newton polish on finite differences recovers the digits golden section
// cannot resolve at a smooth minimum.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "cangeo/error.hpp"

namespace cangeo {

/// Golden-section search for a minimum of f on [a, b].
template <class F>
double golden_section(F&& f, double a, double b, double tol, int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498948482;
  if (b < a) std::swap(a, b);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (fc <= fm && fc <= fd) return c;
  if (fd <= fm) return d;
  return m;
}

struct Minimum1D {
  double x = 0.0;
  double value = 0.0;
};

struct Minimum2D {
  std::array<double, 2> x{};
  double value = 0.0;
};

/// All refined local minima, sorted by value; front() is the global one.
template <class M>
struct MinimizeResult {
  std::vector<M> minima;

  const M& global() const { return minima.front(); }
};

struct MinimizeOptions {
  int grid_n = 512;
  double tol = 1e-12;
  /// Refined minima closer than this (in parameter space) are merged.
  double separation = 1e-6;
  /// Cap on the number of grid basins refined.
  int max_starts = 24;
};

struct Box2 {
  double lo0 = 0.0, hi0 = 0.0;
  double lo1 = 0.0, hi1 = 0.0;
};

namespace detail {

inline constexpr double kFdStep = 1e-5;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline bool not_worse(double candidate, double current) {
  return candidate <= current + 8.0 * kEps * std::max(1.0, std::abs(current));
}

/// Derivative of g at x: five-point stencil when [x - 2h, x + 2h] fits in
/// [lo, hi], else central difference. Short path segments make third
/// derivatives large, and the three-point truncation error then moves the
/// polished crossing by ~1e-9.
template <class G>
double derivative(G&& g, double x, double lo, double hi, double fm, double fp) {
  const double h = kFdStep;
  if (x - 2.0 * h >= lo && x + 2.0 * h <= hi)
    return (8.0 * (fp - fm) - (g(x + 2.0 * h) - g(x - 2.0 * h))) / (12.0 * h);
  return (fp - fm) / (2.0 * h);
}

template <class F>
double polish_1d(F&& f, double x, double lo, double hi) {
  const double h = kFdStep;
  double fx = f(x);
  for (double bound : {lo, hi}) {
    if (std::abs(x - bound) < 4.0 * h) {
      const double fb = f(bound);
      if (fb <= fx) x = bound, fx = fb;
    }
  }
  for (int it = 0; it < 8; ++it) {
    if (x - h < lo || x + h > hi) break;
    const double fm = f(x - h), fp = f(x + h);
    const double g = derivative(f, x, lo, hi, fm, fp);
    const double H = (fp - 2.0 * fx + fm) / (h * h);
    if (!(H > 0.0)) break;
    const double step = std::clamp(-g / H, -4.0 * h, 4.0 * h);
    const double xn = std::clamp(x + step, lo, hi);
    const double fn = f(xn);
    if (!not_worse(fn, fx)) break;
    x = xn;
    fx = fn;
    if (std::abs(step) < 1e-15) break;
  }
  return x;
}

template <class F>
std::array<double, 2> polish_2d(F&& f, std::array<double, 2> x, const Box2& box) {
  const double h = kFdStep;
  const double lo[2] = {box.lo0, box.lo1};
  const double hi[2] = {box.hi0, box.hi1};
  double fx = f(x[0], x[1]);
  for (int k = 0; k < 2; ++k)
    for (double bound : {lo[k], hi[k]}) {
      if (std::abs(x[k] - bound) < 4.0 * h) {
        auto y = x;
        y[k] = bound;
        const double fy = f(y[0], y[1]);
        if (fy <= fx) x = y, fx = fy;
      }
    }
  auto ev = [&](double a, double b) { return f(a, b); };
  for (int it = 0; it < 8; ++it) {
    bool free_dir[2];
    for (int k = 0; k < 2; ++k) free_dir[k] = x[k] - h >= lo[k] && x[k] + h <= hi[k];
    if (!free_dir[0] && !free_dir[1]) break;
    double g[2] = {0.0, 0.0}, H[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    for (int k = 0; k < 2; ++k) {
      if (!free_dir[k]) continue;
      auto p = x, m = x;
      p[k] += h;
      m[k] -= h;
      const double fp = ev(p[0], p[1]), fm = ev(m[0], m[1]);
      auto along = [&](double v) {
        auto y = x;
        y[k] = v;
        return ev(y[0], y[1]);
      };
      g[k] = derivative(along, x[k], lo[k], hi[k], fm, fp);
      H[k][k] = (fp - 2.0 * fx + fm) / (h * h);
    }
    if (free_dir[0] && free_dir[1]) {
      const double fpp = ev(x[0] + h, x[1] + h), fpm = ev(x[0] + h, x[1] - h);
      const double fmp = ev(x[0] - h, x[1] + h), fmm = ev(x[0] - h, x[1] - h);
      H[0][1] = H[1][0] = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    }
    const double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
    if (!(H[0][0] > 0.0) || !(H[1][1] > 0.0) || !(det > 0.0)) break;
    double step[2] = {(-g[0] * H[1][1] + g[1] * H[0][1]) / det,
                      (-g[1] * H[0][0] + g[0] * H[1][0]) / det};
    auto xn = x;
    for (int k = 0; k < 2; ++k) {
      step[k] = std::clamp(step[k], -4.0 * h, 4.0 * h);
      xn[k] = std::clamp(x[k] + step[k], lo[k], hi[k]);
    }
    const double fn = ev(xn[0], xn[1]);
    if (!not_worse(fn, fx)) break;
    x = xn;
    fx = fn;
    if (std::max(std::abs(step[0]), std::abs(step[1])) < 1e-15) break;
  }
  return x;
}

/// Refines a grid basin by repeated golden-section line searches along the
/// coordinate axes and both diagonals.
template <class F>
std::array<double, 2> descend_2d(F&& f, std::array<double, 2> x, const Box2& box, double reach,
                                 double tol) {
  static constexpr double r = 0.70710678118654752440;
  static constexpr double dirs[4][2] = {{1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, -r}};
  const double lo[2] = {box.lo0, box.lo1};
  const double hi[2] = {box.hi0, box.hi1};
  double fx = f(x[0], x[1]);
  int stalls = 0;
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double f_start = fx;
    double moved = 0.0;
    for (const auto& d : dirs) {
      double amin = -reach, amax = reach;
      for (int k = 0; k < 2; ++k) {
        if (d[k] > 0.0) {
          amin = std::max(amin, (lo[k] - x[k]) / d[k]);
          amax = std::min(amax, (hi[k] - x[k]) / d[k]);
        } else if (d[k] < 0.0) {
          amin = std::max(amin, (hi[k] - x[k]) / d[k]);
          amax = std::min(amax, (lo[k] - x[k]) / d[k]);
        }
      }
      if (!(amax - amin > tol)) continue;
      auto line = [&](double a) {
        return f(std::clamp(x[0] + a * d[0], lo[0], hi[0]), std::clamp(x[1] + a * d[1], lo[1], hi[1]));
      };
      const double a = golden_section(line, amin, amax, tol);
      const double fa = line(a);
      if (fa < fx) {
        x = {std::clamp(x[0] + a * d[0], lo[0], hi[0]), std::clamp(x[1] + a * d[1], lo[1], hi[1])};
        fx = fa;
        moved = std::max(moved, std::abs(a));
      }
    }
    if (moved < tol) break;
    stalls = (f_start - fx) <= 4.0 * kEps * std::max(1.0, std::abs(fx)) ? stalls + 1 : 0;
    if (stalls >= 2) break;
    reach = std::max(4.0 * moved, 1e-9);
  }
  return x;
}

}  // namespace detail

/// Grid scan with grid_n + 1 points, then golden-section refinement of
/// every grid-local minimum. Returns all distinct local minima.
template <class F>
MinimizeResult<Minimum1D> minimize_1d(F&& f, double lo, double hi,
                                      const MinimizeOptions& opt = {}) {
  if (!(lo <= hi) || opt.grid_n < 1) throw Error(ErrorCode::EmptyBox, "empty interval");
  MinimizeResult<Minimum1D> out;
  if (hi == lo) {
    out.minima.push_back({lo, f(lo)});
    return out;
  }
  const int n = opt.grid_n;
  const double step = (hi - lo) / n;
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = f(i == n ? hi : lo + step * i);
  std::vector<int> starts;
  for (int i = 0; i <= n; ++i) {
    const bool left_ok = i == 0 || v[i] < v[i - 1];
    const bool right_ok = i == n || v[i] <= v[i + 1];
    if (left_ok && right_ok) starts.push_back(i);
  }
  std::sort(starts.begin(), starts.end(), [&](int a, int b) { return v[a] < v[b]; });
  if (static_cast<int>(starts.size()) > opt.max_starts) starts.resize(opt.max_starts);
  for (int i : starts) {
    const double x0 = lo + step * i;
    const double a = std::max(lo, x0 - step), b = std::min(hi, x0 + step);
    double x = golden_section(f, a, b, opt.tol);
    if (f(x0) < f(x)) x = x0;
    x = detail::polish_1d(f, x, lo, hi);
    const double fx = f(x);
    bool dup = false;
    for (auto& m : out.minima)
      if (std::abs(m.x - x) <= opt.separation) {
        dup = true;
        if (fx < m.value) m = {x, fx};
      }
    if (!dup) out.minima.push_back({x, fx});
  }
  std::sort(out.minima.begin(), out.minima.end(),
            [](const Minimum1D& a, const Minimum1D& b) { return a.value < b.value; });
  return out;
}

/// Grid scan on (grid_n + 1)^2 points, then descent from each grid-local
/// minimum until the parameter change drops below tol.
template <class F>
MinimizeResult<Minimum2D> minimize_2d(F&& f, const Box2& box, const MinimizeOptions& opt = {}) {
  if (!(box.lo0 <= box.hi0) || !(box.lo1 <= box.hi1) || opt.grid_n < 1)
    throw Error(ErrorCode::EmptyBox, "empty rectangle");
  MinimizeResult<Minimum2D> out;
  const int n0 = box.hi0 > box.lo0 ? opt.grid_n : 0;
  const int n1 = box.hi1 > box.lo1 ? opt.grid_n : 0;
  const double s0 = n0 ? (box.hi0 - box.lo0) / n0 : 0.0;
  const double s1 = n1 ? (box.hi1 - box.lo1) / n1 : 0.0;
  auto coord = [](double lo, double hi, double step, int i, int n) {
    return i == n ? hi : lo + step * i;
  };
  std::vector<double> v(static_cast<std::size_t>(n0 + 1) * (n1 + 1));
  auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * (n1 + 1) + j]; };
  for (int i = 0; i <= n0; ++i)
    for (int j = 0; j <= n1; ++j)
      at(i, j) = f(coord(box.lo0, box.hi0, s0, i, n0), coord(box.lo1, box.hi1, s1, j, n1));

  std::vector<std::pair<int, int>> starts;
  for (int i = 0; i <= n0; ++i)
    for (int j = 0; j <= n1; ++j) {
      const double c = at(i, j);
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1 && is_min; ++dj) {
          if (!di && !dj) continue;
          const int a = i + di, b = j + dj;
          if (a < 0 || a > n0 || b < 0 || b > n1) continue;
          const double o = at(a, b);
          // Strict against earlier neighbours so a plateau yields one start.
          const bool earlier = di < 0 || (di == 0 && dj < 0);
          if (earlier ? !(c < o) : !(c <= o)) is_min = false;
        }
      if (is_min) starts.emplace_back(i, j);
    }
  std::sort(starts.begin(), starts.end(),
            [&](auto a, auto b) { return at(a.first, a.second) < at(b.first, b.second); });
  if (static_cast<int>(starts.size()) > opt.max_starts) starts.resize(opt.max_starts);

  const double reach = std::max(s0, s1);
  for (auto [i, j] : starts) {
    std::array<double, 2> x{coord(box.lo0, box.hi0, s0, i, n0), coord(box.lo1, box.hi1, s1, j, n1)};
    if (reach > 0.0) x = detail::descend_2d(f, x, box, reach, opt.tol);
    x = detail::polish_2d(f, x, box);
    const double fx = f(x[0], x[1]);
    bool dup = false;
    for (auto& m : out.minima)
      if (std::hypot(m.x[0] - x[0], m.x[1] - x[1]) <= opt.separation) {
        dup = true;
        if (fx < m.value) m = {x, fx};
      }
    if (!dup) out.minima.push_back({x, fx});
  }
  std::sort(out.minima.begin(), out.minima.end(),
            [](const Minimum2D& a, const Minimum2D& b) { return a.value < b.value; });
  return out;
}

}  // namespace cangeo
