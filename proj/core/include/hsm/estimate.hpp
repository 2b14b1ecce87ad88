#pragma once

#include <cstddef>
#include <span>

namespace hsm {

// Sufficient statistics for a Monte Carlo observable.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_batches = 0;

  double relative_error() const;
};

inline constexpr std::size_t kDefaultBatches = 20;

// Batch-means estimate for a correlated series. The mean uses every sample;
// the standard error comes from `n_batches` contiguous batches, the last one
// absorbing any remainder.
Estimate batch_means(std::span<const double> series,
                     std::size_t n_batches = kDefaultBatches);

// Hit-or-miss estimate of scale * P[hit] with the binomial standard error.
// Each draw counts as its own batch.
Estimate binomial_estimate(std::size_t hits, std::size_t trials,
                           double scale = 1.0);

// Pools two estimates of the same quantity from independent runs, weighting
// by sample count.
Estimate merge(const Estimate& a, const Estimate& b);

Estimate scaled(const Estimate& e, double factor);

// sqrt(se_a^2 + se_b^2).
double combined_stderr(const Estimate& a, const Estimate& b);
double combined_stderr(double se_a, double se_b);

}  // namespace hsm
