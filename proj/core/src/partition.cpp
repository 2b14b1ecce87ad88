#include "hsm/partition.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace hsm {

const char* to_string(PartitionMethod method) {
  switch (method) {
    case PartitionMethod::kMcHit:
      return "mc_hit";
    case PartitionMethod::kSeries:
      return "series";
    case PartitionMethod::kExact1d:
      return "exact_1d";
  }
  return "unknown";
}

namespace {

std::string truncation_message(double truncation, double tolerance) {
  std::ostringstream os;
  os << "grand partition series truncation error " << truncation
     << " exceeds tolerance " << tolerance;
  return os.str();
}

void require_k(int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
}

// Hit counts for k-tuples; returns (hits, scale) with scale = V^k / k!.
struct HitCount {
  std::size_t hits = 0;
  std::size_t all_inside = 0;
  double scale = 0.0;
};

HitCount count_hits(const Region& region, int k, std::size_t samples,
                    CounterRng& rng) {
  const int d = region.dim();
  const double exclusion = 2.0 * unit_ball_radius(d);
  const bool direct = region.has_exact_volume();
  const BallSpec& bounding = region.bounding_ball();
  const double base =
      direct ? region.volume() : ball_volume(bounding.radius, d);

  HitCount h;
  h.scale = std::exp(k * std::log(base) - std::lgamma(k + 1.0));
  std::vector<Point> pts(static_cast<std::size_t>(k),
                         Point(static_cast<std::size_t>(d)));
  for (std::size_t s = 0; s < samples; ++s) {
    bool inside = true;
    for (int i = 0; i < k; ++i) {
      if (direct) {
        region.sample_uniform(rng, pts[i]);
      } else {
        sample_uniform_ball(bounding, rng, pts[i]);
        if (!region.contains(pts[i])) inside = false;
      }
    }
    if (!inside) continue;
    ++h.all_inside;
    if (points_form_packing(pts, exclusion)) ++h.hits;
  }
  return h;
}

}  // namespace

SeriesTruncationError::SeriesTruncationError(double truncation,
                                             double tolerance)
    : std::runtime_error(truncation_message(truncation, tolerance)),
      truncation_(truncation),
      tolerance_(tolerance) {}

PartitionEstimate canonical_zhat_mc(const Region& region, int k,
                                    std::size_t samples, CounterRng& rng) {
  require_k(k);
  PartitionEstimate e;
  e.method = PartitionMethod::kMcHit;
  if (k == 0) {
    e.value = 1.0;
    return e;
  }
  if (k == 1 && region.has_exact_volume()) {
    e.value = region.volume();
    return e;
  }
  if (samples == 0) throw std::invalid_argument("zero samples");
  const HitCount h = count_hits(region, k, samples, rng);
  const Estimate est = binomial_estimate(h.hits, samples, h.scale);
  e.value = est.mean;
  e.std_error = est.std_error;
  return e;
}

PartitionEstimate tonks_zhat_exact(double length, int k) {
  require_k(k);
  if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
  PartitionEstimate e;
  e.method = PartitionMethod::kExact1d;
  if (k == 0) {
    e.value = 1.0;
    return e;
  }
  if (k == 1) {
    e.value = length;
    return e;
  }
  const double free = length - (k - 1);
  if (free <= 0.0) return e;
  e.value = std::exp(k * std::log(free) - std::lgamma(k + 1.0));
  return e;
}

PartitionEstimate canonical_zhat(const Region& region, int k,
                                 std::size_t samples, CounterRng& rng) {
  if (auto iv = region.interval_bounds()) {
    return tonks_zhat_exact(iv->second - iv->first, k);
  }
  return canonical_zhat_mc(region, k, samples, rng);
}

double ideal_gas_tail(double x, int k_max) {
  if (x <= 0.0) return 0.0;
  // Sum forward from k_max + 1; terms eventually decrease geometrically.
  double term = std::exp((k_max + 1) * std::log(x) - std::lgamma(k_max + 2.0));
  double sum = 0.0;
  for (int k = k_max + 1; k < k_max + 100000; ++k) {
    sum += term;
    if (k > x && term <= 1e-17 * sum) break;
    term *= x / (k + 1);
  }
  return sum;
}

GrandSeries grand_z_series_full(const Region& region, double lambda,
                                int k_max, std::size_t per_k_samples,
                                CounterRng& rng,
                                std::optional<double> tolerance) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  const int d = region.dim();
  const double exclusion = 2.0 * unit_ball_radius(d);
  const double bounding_diameter = 2.0 * region.bounding_ball().radius;
  const bool at_most_one = bounding_diameter <= exclusion;
  const double vol = region.has_exact_volume()
                         ? region.volume()
                         : ball_volume(region.bounding_ball().radius, d);

  GrandSeries out;
  out.z.method = region.interval_bounds() ? PartitionMethod::kExact1d
                                          : PartitionMethod::kSeries;
  // Intervals hold at most floor(L) + 1 rods, so the series may be complete.
  bool complete = at_most_one;
  if (const auto iv = region.interval_bounds()) {
    complete = complete || k_max >= std::floor(iv->second - iv->first) + 1;
  }
  out.z.truncation_error = complete ? 0.0 : ideal_gas_tail(lambda * vol, k_max);
  if (tolerance && out.z.truncation_error > *tolerance) {
    throw SeriesTruncationError(out.z.truncation_error, *tolerance);
  }

  double value = 1.0;
  double var = 0.0;
  double lambda_k = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    lambda_k *= lambda;
    if (lambda_k == 0.0) break;
    if (at_most_one && k >= 2) break;
    const PartitionEstimate zk = canonical_zhat(region, k, per_k_samples, rng);
    if (k == 1) {
      out.volume_estimate = zk.value;
      out.volume_std_error = zk.std_error;
    }
    value += lambda_k * zk.value;
    var += lambda_k * lambda_k * zk.std_error * zk.std_error;
    out.lambda_dz += k * lambda_k * zk.value;
  }
  out.z.value = value;
  out.z.std_error = std::sqrt(var);
  return out;
}

PartitionEstimate grand_z_series(const Region& region, double lambda,
                                 int k_max, std::size_t per_k_samples,
                                 CounterRng& rng,
                                 std::optional<double> tolerance) {
  return grand_z_series_full(region, lambda, k_max, per_k_samples, rng,
                             tolerance)
      .z;
}

EntropyEstimate entropy_density_for_count(double n, int k, int d,
                                          std::size_t samples,
                                          CounterRng& rng) {
  if (!(n > 0.0)) throw std::invalid_argument("n must be positive");
  if (k < 1) throw std::invalid_argument("need at least one centre");
  EntropyEstimate e;
  e.n = n;
  e.k = k;
  e.alpha = k / n;
  const double norm = k;  // alpha * n
  const Region ball = Region::ball_volume(n, d);

  if (ball.interval_bounds()) {
    e.method = PartitionMethod::kExact1d;
    const double z = tonks_zhat_exact(n, k).value;
    if (z <= 0.0) {
      e.value = -std::numeric_limits<double>::infinity();
      return e;
    }
    e.value = (std::log(z) + std::lgamma(k + 1.0) - k * std::log(n)) / norm;
    return e;
  }

  e.method = PartitionMethod::kMcHit;
  if (k == 1) return e;
  if (samples == 0) throw std::invalid_argument("zero samples");
  const HitCount h = count_hits(ball, k, samples, rng);
  if (h.hits == 0) {
    e.bound_only = true;
    e.value = std::log(1.0 / static_cast<double>(samples)) / norm;
    return e;
  }
  const double p = static_cast<double>(h.hits) / static_cast<double>(samples);
  e.value = std::log(p) / norm;
  e.std_error = std::sqrt((1.0 - p) / (p * static_cast<double>(samples))) / norm;
  return e;
}

EntropyEstimate entropy_density_estimate(double n, double alpha, int d,
                                         std::size_t samples,
                                         CounterRng& rng) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const int k = static_cast<int>(std::floor(alpha * n));
  if (k < 1) throw std::invalid_argument("floor(alpha n) must be >= 1");
  EntropyEstimate e = entropy_density_for_count(n, k, d, samples, rng);
  // Rescale from 1/k to 1/(alpha n).
  const double factor = k / (alpha * n);
  e.value *= factor;
  e.std_error *= factor;
  e.alpha = alpha;
  return e;
}

}  // namespace hsm
