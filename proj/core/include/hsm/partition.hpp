#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "hsm/model.hpp"
#include "hsm/rng.hpp"

namespace hsm {

enum class PartitionMethod { kMcHit, kSeries, kExact1d };

const char* to_string(PartitionMethod method);

struct PartitionEstimate {
  double value = 0.0;
  double std_error = 0.0;
  PartitionMethod method = PartitionMethod::kMcHit;
  double truncation_error = 0.0;
};

// Thrown by grand_z_series when the ideal-gas tail beyond k_max exceeds the
// caller's tolerance.
class SeriesTruncationError : public std::runtime_error {
 public:
  SeriesTruncationError(double truncation, double tolerance);
  double truncation() const { return truncation_; }
  double tolerance() const { return tolerance_; }

 private:
  double truncation_;
  double tolerance_;
};

// Hit-or-miss estimate of Z^_S(k) = (vol^k / k!) P[k uniform points pack].
// Regions of exact volume are sampled directly; membership-oracle regions
// are sampled through their bounding ball, with a hit requiring every point
// inside the region. k = 0 returns exactly 1.
PartitionEstimate canonical_zhat_mc(const Region& region, int k,
                                    std::size_t samples, CounterRng& rng);

// Tonks gas: (L - (k - 1))^k / k! for L > k - 1, else 0. Unit-volume rods
// in d = 1 have 2 r_1 = 1.
PartitionEstimate tonks_zhat_exact(double length, int k);

// Z^_S(k) routed to the exact oracle for real intervals (d = 1) and to
// hit-or-miss otherwise.
PartitionEstimate canonical_zhat(const Region& region, int k,
                                 std::size_t samples, CounterRng& rng);

// sum_{k >= k_max + 1} x^k / k!.
double ideal_gas_tail(double x, int k_max);

// Z_S(lambda) = sum_{k <= k_max} lambda^k Z^_S(k). The truncation error is
// the ideal-gas tail at lambda * vol, where vol is the region volume (or
// the bounding-ball volume for oracle regions); it is zero when the
// bounding ball is too small to hold two centres or when k_max covers every
// feasible count of an interval.
PartitionEstimate grand_z_series(const Region& region, double lambda,
                                 int k_max, std::size_t per_k_samples,
                                 CounterRng& rng,
                                 std::optional<double> tolerance = std::nullopt);

// Series for Z and lambda Z' from the same canonical estimates.
struct GrandSeries {
  PartitionEstimate z;
  double lambda_dz = 0.0;  // lambda * Z'(lambda)
  double volume_estimate = 0.0;  // Z^(1) = vol
  double volume_std_error = 0.0;
};
GrandSeries grand_z_series_full(const Region& region, double lambda,
                                int k_max, std::size_t per_k_samples,
                                CounterRng& rng,
                                std::optional<double> tolerance = std::nullopt);

struct EntropyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int k = 0;
  double alpha = 0.0;
  double n = 0.0;
  PartitionMethod method = PartitionMethod::kMcHit;
  // Zero hits: value is log(1 / samples) / (alpha n), not an estimate.
  bool bound_only = false;
};

// Finite-n entropy density (1 / (alpha n)) log[Z^_{B_n}(k) / (n^k / k!)]
// with k = floor(alpha n).
EntropyEstimate entropy_density_estimate(double n, double alpha, int d,
                                         std::size_t samples, CounterRng& rng);
// Same with k given and alpha = k / n.
EntropyEstimate entropy_density_for_count(double n, int k, int d,
                                          std::size_t samples, CounterRng& rng);

}  // namespace hsm
