#pragma once

// Test-only oracles. Nothing here calls into the code paths it checks.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

inline double unit_radius_closed_form(int d) {
  // Direct formula, avoiding the library's lgamma path for small d.
  switch (d) {
    case 1:
      return 0.5;
    case 2:
      return 1.0 / std::sqrt(std::numbers::pi);
    case 3:
      return std::cbrt(3.0 / (4.0 * std::numbers::pi));
    default:
      return std::pow(std::tgamma(0.5 * d + 1.0), 1.0 / d) /
             std::sqrt(std::numbers::pi);
  }
}

// O(k^2) pairwise test on raw coordinates.
inline bool brute_force_packing(const std::vector<std::vector<double>>& pts,
                                double min_distance) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < pts[i].size(); ++a) {
        s += (pts[i][a] - pts[j][a]) * (pts[i][a] - pts[j][a]);
      }
      if (std::sqrt(s) <= min_distance) return false;
    }
  }
  return true;
}

// Volume of unordered k-tuples in [0, L] with gaps > 1 by recursive
// trapezoid quadrature: f_1(x) = x, f_k(x) = int_1^x f_{k-1}(y - 1) dy,
// Z^(k) = f_k(L) (sorted tuples, i.e. unordered).
inline double tonks_by_quadrature(double length, int k, int steps = 20000) {
  if (k == 0) return 1.0;
  const double h = length / steps;
  std::vector<double> f(steps + 1);
  for (int i = 0; i <= steps; ++i) f[i] = i * h;
  for (int level = 2; level <= k; ++level) {
    std::vector<double> g(steps + 1, 0.0);
    auto prev_at = [&](double x) {
      if (x <= 0.0) return 0.0;
      const double pos = x / h;
      const int i = static_cast<int>(pos);
      if (i >= steps) return f[steps];
      const double t = pos - i;
      return f[i] * (1 - t) + f[i + 1] * t;
    };
    for (int i = 1; i <= steps; ++i) {
      const double x0 = (i - 1) * h;
      const double x1 = i * h;
      g[i] = g[i - 1] + 0.5 * h * (prev_at(x0 - 1.0) + prev_at(x1 - 1.0));
    }
    f = std::move(g);
  }
  return f[steps];
}

// Area of the lens of two discs.
inline double lens_area_2d(double c, double r1, double r2) {
  if (c >= r1 + r2) return 0.0;
  if (c <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return std::numbers::pi * r * r;
  }
  const double a1 = std::acos((c * c + r1 * r1 - r2 * r2) / (2 * c * r1));
  const double a2 = std::acos((c * c + r2 * r2 - r1 * r1) / (2 * c * r2));
  const double tri = 0.5 * std::sqrt((-c + r1 + r2) * (c + r1 - r2) *
                                     (c - r1 + r2) * (c + r1 + r2));
  return r1 * r1 * a1 + r2 * r2 * a2 - tri;
}

// Volume of the lens of two balls in R^3.
inline double lens_volume_3d(double c, double r1, double r2) {
  if (c >= r1 + r2) return 0.0;
  if (c <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }
  const double s = r1 + r2 - c;
  return std::numbers::pi * s * s *
         (c * c + 2 * c * r2 - 3 * r2 * r2 + 2 * c * r1 + 6 * r1 * r2 -
          3 * r1 * r1) /
         (12.0 * c);
}

// Exact d = 1 grand-canonical law on [0, L] from quadrature Z^(k).
struct HardRodLaw {
  std::vector<double> p;  // P[|X| = k]
  double mean = 0.0;
  double variance = 0.0;
};

inline HardRodLaw hard_rod_law(double length, double lambda) {
  HardRodLaw law;
  std::vector<double> w;
  double z = 0.0;
  for (int k = 0; k <= static_cast<int>(length) + 1; ++k) {
    const double term = std::pow(lambda, k) * tonks_by_quadrature(length, k);
    w.push_back(term);
    z += term;
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    law.p.push_back(w[k] / z);
    law.mean += k * law.p.back();
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    law.variance += (k - law.mean) * (k - law.mean) * law.p[k];
  }
  return law;
}

}  // namespace oracle
