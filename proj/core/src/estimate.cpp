#include "hsm/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hsm {

double Estimate::relative_error() const {
  return mean == 0.0 ? 0.0 : std_error / std::abs(mean);
}

Estimate batch_means(std::span<const double> series, std::size_t n_batches) {
  Estimate e;
  const std::size_t n = series.size();
  e.n_samples = n;
  if (n == 0) return e;

  double sum = 0.0;
  for (double x : series) sum += x;
  e.mean = sum / static_cast<double>(n);

  const std::size_t batches = std::min(n_batches, n);
  e.n_batches = batches;
  if (batches < 2) return e;

  const std::size_t batch_size = n / batches;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * batch_size;
    const std::size_t hi = (b + 1 == batches) ? n : lo + batch_size;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += series[i];
    means[b] = s / static_cast<double>(hi - lo);
  }
  double mb = 0.0;
  for (double m : means) mb += m;
  mb /= static_cast<double>(batches);
  double ss = 0.0;
  for (double m : means) ss += (m - mb) * (m - mb);
  const double var_of_batch_mean = ss / static_cast<double>(batches - 1);
  e.std_error = std::sqrt(var_of_batch_mean / static_cast<double>(batches));
  return e;
}

Estimate binomial_estimate(std::size_t hits, std::size_t trials, double scale) {
  if (trials == 0) throw std::invalid_argument("binomial estimate needs trials");
  if (hits > trials) throw std::invalid_argument("hits exceed trials");
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  Estimate e;
  e.mean = scale * p;
  e.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  e.n_samples = trials;
  e.n_batches = trials;
  return e;
}

Estimate merge(const Estimate& a, const Estimate& b) {
  const std::size_t n = a.n_samples + b.n_samples;
  if (n == 0) return a;
  const double wa = static_cast<double>(a.n_samples) / static_cast<double>(n);
  const double wb = 1.0 - wa;
  Estimate e;
  e.mean = wa * a.mean + wb * b.mean;
  e.std_error = std::sqrt(wa * wa * a.std_error * a.std_error +
                          wb * wb * b.std_error * b.std_error);
  e.n_samples = n;
  e.n_batches = a.n_batches + b.n_batches;
  return e;
}

Estimate scaled(const Estimate& e, double factor) {
  Estimate out = e;
  out.mean *= factor;
  out.std_error *= std::abs(factor);
  return out;
}

double combined_stderr(double se_a, double se_b) {
  return std::sqrt(se_a * se_a + se_b * se_b);
}

double combined_stderr(const Estimate& a, const Estimate& b) {
  return combined_stderr(a.std_error, b.std_error);
}

}  // namespace hsm
