#pragma once

// Test-side helpers: random generators and reference computations that do not
// go through the library's projection code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testsupport {

using Vec = Eigen::VectorXd;

inline Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

inline Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

inline double dot_loop(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec gaussian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v;
}

inline double unif(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec box_point(std::mt19937_64& rng, int dim, double r) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = unif(rng, -r, r);
  return v;
}

/// Nearest point to x on the line {p0 + t d}: stationary point of the 1-D
/// quadratic t ↦ ‖p0 + t d − x‖².
inline Vec nearest_on_line(const Vec& p0, const Vec& d, const Vec& x) {
  const double t = dot_loop(x - p0, d) / dot_loop(d, d);
  return p0 + t * d;
}

/// Brute-force nearest grid point of a 2-D feasible region, refined around
/// the best cell. Good for well-shaped regions; a narrow wedge can trap the
/// refinement away from the true minimiser.
inline Vec grid_nearest_2d(const std::function<bool(const Vec&)>& feasible,
                           const Vec& x, double half_width, int cells = 400) {
  Vec center = x;
  Vec best = x;
  double best_d = std::numeric_limits<double>::infinity();
  double h = half_width;
  for (int pass = 0; pass < 6; ++pass) {
    const double step = 2 * h / cells;
    for (int i = 0; i <= cells; ++i) {
      for (int j = 0; j <= cells; ++j) {
        Vec p = v2(center[0] - h + i * step, center[1] - h + j * step);
        if (!feasible(p)) continue;
        const double d = (p - x).norm();
        if (d < best_d) {
          best_d = d;
          best = p;
        }
      }
    }
    center = best;
    h = 60 * step;
  }
  return best;
}

/// Nearest point of the polygon {y : a_i·y ≤ b_i} in the plane by listing x,
/// the foot of x on every edge line and every pairwise line crossing (Cramer's
/// rule), keeping the feasible ones. Returns false when none is feasible.
inline bool polygon_nearest_2d(const std::vector<Vec>& a,
                               const std::vector<double>& b, const Vec& x,
                               Vec& best, double slack = 1e-9) {
  auto feasible = [&](const Vec& y) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i][0] * y[0] + a[i][1] * y[1] > b[i] + slack) return false;
    }
    return true;
  };
  std::vector<Vec> cands{x};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double nn = a[i][0] * a[i][0] + a[i][1] * a[i][1];
    const double r = (a[i][0] * x[0] + a[i][1] * x[1] - b[i]) / nn;
    cands.push_back(v2(x[0] - r * a[i][0], x[1] - r * a[i][1]));
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
      if (std::abs(det) < 1e-12) continue;
      cands.push_back(v2((b[i] * a[j][1] - a[i][1] * b[j]) / det,
                         (a[i][0] * b[j] - b[i] * a[j][0]) / det));
    }
  }
  bool found = false;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) {
    if (!feasible(c)) continue;
    const double d = (c - x).norm();
    if (d < best_d) {
      best_d = d;
      best = c;
      found = true;
    }
  }
  return found;
}

}  // namespace testsupport
