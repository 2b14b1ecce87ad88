#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hsm/report.hpp"
#include "hsm/rng.hpp"
#include "hsm/sampler.hpp"

namespace hsm {

// Hit-or-miss Z^ against the exact hard-rod values on every (L, k) cell.
// A cell passes when |mc - exact| <= sigmas * stderr.
struct TonksCheckOptions {
  std::vector<double> lengths{5.0, 10.0, 20.0};
  int k_max = 6;
  std::size_t samples = 100000;
  double sigmas = 3.0;
};
CheckReport verify_tonks(const TonksCheckOptions& options, CounterRng& rng);

// Chi-square of the sampled |X| histogram on Interval(length) against
// lambda^k Z^(k) / Z. Bins with expected count below five are pooled into
// the last bin.
struct StationarityOptions {
  double length = 3.0;
  double lambda = 1.0;
  Schedule schedule{10000, 100000, 30};
  std::size_t chains = 1;
  std::size_t threads = 1;
  double min_p_value = 1e-3;
};
CheckReport verify_stationarity(const StationarityOptions& options,
                                std::uint64_t seed);

// Upper tail P[chi^2_df > x].
double chi_square_p_value(double x, int df);

// log Z_S(lambda) <= lambda vol(S) on random desk-scale balls and
// intervals, up to three relative standard errors and the series
// truncation.
struct LogZOptions {
  std::size_t cases = 20;
  std::size_t per_k_samples = 20000;
  double tolerance = 1e-8;
};
CheckReport verify_log_z(const LogZOptions& options, CounterRng& rng);

}  // namespace hsm
