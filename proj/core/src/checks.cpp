#include "hsm/checks.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "hsm/partition.hpp"

namespace hsm {

double chi_square_p_value(double x, int df) {
  if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

CheckReport verify_tonks(const TonksCheckOptions& options, CounterRng& rng) {
  CheckReport report;
  report.name = "tonks";
  nlohmann::json cells = nlohmann::json::array();
  bool all_pass = true;
  double worst = -1.0;
  for (double length : options.lengths) {
    for (int k = 1; k <= options.k_max; ++k) {
      const double exact = tonks_zhat_exact(length, k).value;
      const PartitionEstimate mc =
          canonical_zhat_mc(Region::interval(length), k, options.samples, rng);
      const double gap = std::abs(mc.value - exact);
      const bool pass = gap <= options.sigmas * mc.std_error;
      all_pass = all_pass && pass;
      const double z = mc.std_error > 0.0 ? gap / mc.std_error : 0.0;
      cells.push_back({{"L", length},
                       {"k", k},
                       {"exact", exact},
                       {"mc", mc.value},
                       {"stderr", mc.std_error},
                       {"pass", pass}});
      if (z > worst) {
        worst = z;
        report.lhs = mc.value;
        report.stderr_lhs = mc.std_error;
        report.rhs = exact;
        report.margin_sigmas = options.sigmas - z;
      }
    }
  }
  report.verdict = all_pass ? Verdict::kPass : Verdict::kFail;
  report.details["cells"] = cells;
  report.details["samples"] = options.samples;
  report.details["sigmas"] = options.sigmas;
  return report;
}

CheckReport verify_stationarity(const StationarityOptions& options,
                                std::uint64_t seed) {
  CheckReport report;
  report.name = "stationarity";
  const Region region = Region::interval(options.length);
  RunOptions run;
  run.seed = seed;
  run.chains = options.chains;
  run.threads = options.threads;
  run.probes_per_sample = 0;
  const ChainObservables obs = run_observables(
      region, FugacityParams{options.lambda, 1}, options.schedule, run);

  std::vector<double> weight;
  double z = 0.0;
  for (int k = 0;; ++k) {
    const double w = std::pow(options.lambda, k) *
                     tonks_zhat_exact(options.length, k).value;
    if (w <= 0.0) break;
    weight.push_back(w);
    z += w;
  }
  double total = 0.0;
  for (std::size_t c : obs.count_histogram) total += static_cast<double>(c);

  // Pool sparse bins from the top down.
  std::vector<double> expected;
  std::vector<double> observed;
  for (std::size_t k = 0; k < weight.size(); ++k) {
    expected.push_back(total * weight[k] / z);
    observed.push_back(k < obs.count_histogram.size()
                           ? static_cast<double>(obs.count_histogram[k])
                           : 0.0);
  }
  while (expected.size() > 2 && expected.back() < 5.0) {
    const double e = expected.back();
    const double o = observed.back();
    expected.pop_back();
    observed.pop_back();
    expected.back() += e;
    observed.back() += o;
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  const int df = static_cast<int>(expected.size()) - 1;
  const double p = chi_square_p_value(chi2, df);

  report.lhs = p;
  report.rhs = options.min_p_value;
  report.margin_sigmas = 0.0;
  report.verdict = p > options.min_p_value ? Verdict::kPass : Verdict::kFail;
  report.details["chi_square"] = chi2;
  report.details["dof"] = df;
  report.details["samples"] = total;
  report.details["observed"] = observed;
  report.details["expected"] = expected;
  report.details["lambda"] = options.lambda;
  report.details["L"] = options.length;
  return report;
}

CheckReport verify_log_z(const LogZOptions& options, CounterRng& rng) {
  CheckReport report;
  report.name = "logZ";
  nlohmann::json cases = nlohmann::json::array();
  bool all_pass = true;
  double worst = -1e300;
  for (std::size_t i = 0; i < options.cases; ++i) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const double vol = 1.0 + 9.0 * rng.uniform();
    const double lambda = 0.1 + 1.9 * rng.uniform();
    const bool interval = d == 1 && rng.below(2) == 0;
    const Region s =
        interval ? Region::interval(vol) : Region::ball_volume(vol, d);
    int k_max = 1;
    while (ideal_gas_tail(lambda * vol, k_max) > options.tolerance) ++k_max;
    const PartitionEstimate z = grand_z_series(
        s, lambda, k_max, options.per_k_samples, rng, options.tolerance);
    const double lhs = std::log(z.value);
    const double rhs = lambda * vol;
    const double allowed = rhs + 3.0 * z.std_error / z.value + z.truncation_error;
    const bool pass = lhs <= allowed;
    all_pass = all_pass && pass;
    cases.push_back({{"d", d},
                     {"region", interval ? "interval" : "ball"},
                     {"volume", vol},
                     {"lambda", lambda},
                     {"k_max", k_max},
                     {"log_z", lhs},
                     {"lambda_volume", rhs},
                     {"pass", pass}});
    if (lhs - rhs > worst) {
      worst = lhs - rhs;
      report.lhs = lhs;
      report.stderr_lhs = z.std_error / z.value;
      report.rhs = rhs;
      report.margin_sigmas =
          sigmas(allowed - lhs, std::max(z.std_error / z.value, 1e-300));
    }
  }
  report.verdict = all_pass ? Verdict::kPass : Verdict::kFail;
  report.details["cases"] = cases;
  return report;
}

}  // namespace hsm
