#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "hsm/rng.hpp"

namespace hsm {

// A point of R^d. Lengths are in units where the ball of radius r_d has
// volume one.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim) : coords_(dim, 0.0) {}
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  std::span<double> coords() { return coords_; }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

double distance_squared(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
double norm(const Point& p);

struct BallSpec {
  Point center;
  double radius = 0.0;
};

// r_d: radius of the d-dimensional ball of volume one.
double unit_ball_radius(int d);

// pi^{d/2} r^d / Gamma(d/2 + 1).
double ball_volume(double radius, int d);
double log_unit_ball_volume(int d);

// Uniform point in the closed ball. Direction from a normalized Gaussian,
// radius R * U^{1/d}.
Point sample_uniform_ball(const BallSpec& ball, CounterRng& rng);
// Same law, written into `out` (resized to the ball's dimension).
void sample_uniform_ball(const BallSpec& ball, CounterRng& rng, Point& out);

// Volume of the cap of height h in [0, 2r] cut from a ball of radius r.
double spherical_cap_volume(double radius, double height, int d);

// Exact volume of B_{r1}(a) ∩ B_{r2}(b) with |a - b| = dist.
double two_ball_intersection_volume(double dist, double r1, double r2, int d);

// (2 sqrt(1 - t^{-2}))^d: volume of the ball containing
// B_{2 r_d}(u) ∩ B_{t r_d}(0) when |u| = t r_d, for t in [sqrt 2, 2].
double containing_ball_bound(double t, int d);

}  // namespace hsm
