#include "hsm/geometry.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hsm {
namespace {

void require_dimension(int d) {
  if (d < 1) {
    throw std::invalid_argument("dimension must be >= 1, got " +
                                std::to_string(d));
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  }
}

double distance_squared(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

double distance(const Point& a, const Point& b) {
  return std::sqrt(distance_squared(a, b));
}

double norm(const Point& p) {
  double s = 0.0;
  for (double c : p.coords()) s += c * c;
  return std::sqrt(s);
}

double log_unit_ball_volume(int d) {
  require_dimension(d);
  const double half = 0.5 * d;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

double unit_ball_radius(int d) {
  return std::exp(-log_unit_ball_volume(d) / d);
}

double ball_volume(double radius, int d) {
  require_dimension(d);
  if (radius < 0.0) throw std::invalid_argument("negative radius");
  if (radius == 0.0) return 0.0;
  return std::exp(log_unit_ball_volume(d) + d * std::log(radius));
}

void sample_uniform_ball(const BallSpec& ball, CounterRng& rng, Point& out) {
  const std::size_t d = ball.center.dim();
  if (out.dim() != d) out = Point(d);
  if (ball.radius == 0.0) {
    out = ball.center;
    return;
  }
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double g = rng.normal();
      out[i] = g;
      norm2 += g * g;
    }
  } while (norm2 == 0.0);
  const double r =
      ball.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  const double scale = r / std::sqrt(norm2);
  for (std::size_t i = 0; i < d; ++i) out[i] = ball.center[i] + scale * out[i];
}

Point sample_uniform_ball(const BallSpec& ball, CounterRng& rng) {
  Point p(ball.center.dim());
  sample_uniform_ball(ball, rng, p);
  return p;
}

double spherical_cap_volume(double radius, double height, int d) {
  require_dimension(d);
  if (radius <= 0.0 || height <= 0.0) return 0.0;
  if (height >= 2.0 * radius) return ball_volume(radius, d);
  if (height > radius) {
    return ball_volume(radius, d) -
           spherical_cap_volume(radius, 2.0 * radius - height, d);
  }
  // sin^2 of the cap half-angle.
  const double x = std::min(1.0, height * (2.0 * radius - height) /
                                     (radius * radius));
  return 0.5 * ball_volume(radius, d) *
         boost::math::ibeta(0.5 * (d + 1), 0.5, x);
}

double two_ball_intersection_volume(double dist, double r1, double r2, int d) {
  require_dimension(d);
  if (dist < 0.0) throw std::invalid_argument("negative distance");
  if (r1 <= 0.0 || r2 <= 0.0) return 0.0;
  if (dist >= r1 + r2) return 0.0;
  if (dist <= std::abs(r1 - r2)) return ball_volume(std::min(r1, r2), d);
  // Signed distance from the first center to the radical hyperplane.
  const double c1 = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
  const double c2 = dist - c1;
  return spherical_cap_volume(r1, r1 - c1, d) +
         spherical_cap_volume(r2, r2 - c2, d);
}

double containing_ball_bound(double t, int d) {
  require_dimension(d);
  constexpr double kSlack = 1e-12;
  if (!(t >= std::numbers::sqrt2 - kSlack && t <= 2.0 + kSlack)) {
    throw std::invalid_argument("containing_ball_bound needs t in [sqrt2, 2]");
  }
  const double s = std::max(0.0, 1.0 - 1.0 / (t * t));
  return std::pow(2.0 * std::sqrt(s), d);
}

}  // namespace hsm
