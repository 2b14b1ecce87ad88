#include "hsm/uncovered.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hsm/partition.hpp"

namespace hsm {

// -------------------------------------------------------- UncoveredRegion

UncoveredRegion::UncoveredRegion(const Region& host, Point v,
                                 const std::vector<Point>& centers)
    : dim_(host.dim()),
      host_(host),
      v_(std::move(v)),
      region_(Region::interval(0.0, 1.0)) {
  if (static_cast<int>(v_.dim()) != dim_) {
    throw std::invalid_argument("v has the wrong dimension");
  }
  const double reach = 2.0 * unit_ball_radius(dim_);
  const double reach2 = reach * reach;
  const double outer2 = 4.0 * reach2;  // (4 r_d)^2
  auto external = std::make_shared<std::vector<Point>>();
  for (const Point& y : centers) {
    const double d2 = distance_squared(y, v_);
    if (d2 > reach2 && d2 <= outer2) external->push_back(y);
  }
  external_ = external;

  const auto host_interval = host_.interval_bounds();
  if (dim_ == 1 && host_interval) {
    // In one dimension every external centre clips one end of [v-1, v+1].
    double lo = std::max(v_[0] - reach, host_interval->first);
    double hi = std::min(v_[0] + reach, host_interval->second);
    for (const Point& y : *external_) {
      if (y[0] > v_[0]) {
        hi = std::min(hi, y[0] - reach);
      } else {
        lo = std::max(lo, y[0] + reach);
      }
    }
    if (hi > lo) {
      region_ = Region::interval(lo, hi).relabeled(RegionKind::kUncovered);
      return;
    }
  }

  const Region host_copy = host_;
  const Point centre = v_;
  auto member = [host_copy, centre, external, reach2](const Point& x) {
    if (distance_squared(x, centre) > reach2) return false;
    if (!host_copy.contains(x)) return false;
    for (const Point& y : *external) {
      if (distance_squared(x, y) <= reach2) return false;
    }
    return true;
  };
  region_ = Region::custom(RegionKind::kUncovered, dim_, member,
                           BallSpec{v_, reach});
}

UncoveredRegion make_uncovered(const Region& host, const Configuration& config,
                               const Point& v) {
  const double reach = 2.0 * unit_ball_radius(host.dim());
  std::vector<Point> nearby;
  for (std::size_t id : config.within(v, 2.0 * reach)) {
    nearby.push_back(config.center(id));
  }
  return UncoveredRegion(host, v, nearby);
}

UncoveredRegion sample_uncovered(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule, CounterRng& rng) {
  ChainState state(region, params, rng(), 0);
  run_chain(state, schedule, nullptr);
  const Point v = region.sample_uniform(rng);
  return make_uncovered(region, state.config(), v);
}

namespace {

// Volume of T: exact for intervals, hit-or-miss otherwise.
Estimate uncovered_volume(const UncoveredRegion& t, std::size_t samples,
                          CounterRng& rng) {
  if (auto iv = t.region().interval_bounds()) {
    Estimate e;
    e.mean = iv->second - iv->first;
    e.n_samples = 1;
    e.n_batches = 1;
    return e;
  }
  return region_volume_mc(t.region(), samples, rng);
}

Schedule with_samples(Schedule s, std::size_t n) {
  s.n_samples = std::max(s.n_samples, n);
  return s;
}

}  // namespace

Estimate estimate_evol_T(const Region& region, const FugacityParams& params,
                         const Schedule& schedule, std::size_t reps,
                         std::size_t mc_vol_samples, CounterRng& rng) {
  if (reps == 0) throw std::invalid_argument("reps must be positive");
  ChainState state(region, params, rng(), 0);
  CounterRng probe = rng.split(1);
  Schedule s = schedule;
  s.n_samples = reps;
  std::vector<double> vols;
  vols.reserve(reps);
  run_chain(state, s, [&](const ChainState& st, std::size_t) {
    const Point v = region.sample_uniform(probe);
    const UncoveredRegion t = make_uncovered(region, st.config(), v);
    vols.push_back(uncovered_volume(t, mc_vol_samples, probe).mean);
  });
  return batch_means(vols);
}

bool TDraw::satisfies_log_bound(double lambda) const {
  const double slack = truncation + 4.0 * (z_std_error / z +
                                           lambda * volume_std_error) +
                       1e-12;
  return log_z <= lambda * volume + slack;
}

CheckReport verify_identity_31(const Region& region,
                               const FugacityParams& params,
                               const Schedule& schedule,
                               const IdentityOptions& options, CounterRng& rng,
                               std::vector<TDraw>* draws) {
  if (options.reps == 0) throw std::invalid_argument("reps must be positive");
  CheckReport report;
  report.name = "identity31";
  const double lambda = params.lambda;
  const double volume = region.volume();

  ChainState state(region, params, rng(), 0);
  CounterRng probe = rng.split(1);
  const Schedule s = with_samples(schedule, options.reps);
  const std::size_t stride = s.n_samples / options.reps;

  std::vector<double> alpha_series;
  std::vector<double> inv_z;
  std::vector<double> log_z;
  std::vector<double> vol_t;
  std::vector<TDraw> local;
  double delta_bias = 0.0;
  std::size_t log_bound_violations = 0;
  bool truncated = false;
  double worst_truncation = 0.0;

  run_chain(state, s, [&](const ChainState& st, std::size_t i) {
    alpha_series.push_back(static_cast<double>(st.config().size()) / volume);
    if (truncated || i % stride != 0 || local.size() >= options.reps) return;
    const Point v = region.sample_uniform(probe);
    const UncoveredRegion t = make_uncovered(region, st.config(), v);
    GrandSeries gs;
    try {
      gs = grand_z_series_full(t.region(), lambda, options.k_max,
                               options.per_k_samples, probe,
                               options.zt_tolerance);
    } catch (const SeriesTruncationError& e) {
      truncated = true;
      worst_truncation = e.truncation();
      return;
    }
    TDraw draw;
    draw.z = gs.z.value;
    draw.z_std_error = gs.z.std_error;
    draw.truncation = gs.z.truncation_error;
    draw.log_z = std::log(gs.z.value);
    if (auto iv = t.region().interval_bounds()) {
      draw.volume = iv->second - iv->first;
    } else {
      draw.volume = gs.volume_estimate;
      draw.volume_std_error = gs.volume_std_error;
    }
    draw.lambda_dz_over_z = gs.lambda_dz / gs.z.value;
    draw.external = t.external_centers().size();
    draw.inside = st.config().count_within(v, 2.0 * unit_ball_radius(region.dim()));
    worst_truncation = std::max(worst_truncation, draw.truncation);
    if (!draw.satisfies_log_bound(lambda)) ++log_bound_violations;

    inv_z.push_back(1.0 / draw.z);
    log_z.push_back(draw.log_z);
    vol_t.push_back(draw.volume);
    delta_bias += -0.5 * (draw.z_std_error / draw.z) * (draw.z_std_error / draw.z);
    local.push_back(draw);
  });

  report.details["draws"] = local.size();
  report.details["zt_tolerance"] = options.zt_tolerance;
  report.details["worst_truncation"] = worst_truncation;
  if (truncated) {
    report.verdict = Verdict::kInconclusive;
    report.details["reason"] = "Z_T series did not converge at k_max";
    if (draws) *draws = std::move(local);
    return report;
  }

  const Estimate alpha = batch_means(alpha_series);
  const Estimate lhs = scaled(batch_means(inv_z), lambda);
  const Estimate mean_log_z = batch_means(log_z);
  const Estimate mean_vol = batch_means(vol_t);

  report.lhs = lhs.mean;
  report.stderr_lhs = lhs.std_error;
  report.rhs = alpha.mean;
  report.stderr_rhs = alpha.std_error;
  const double combined = combined_stderr(lhs, alpha);
  const double gap = std::abs(lhs.mean - alpha.mean);
  report.margin_sigmas = sigmas(options.agreement_sigmas * combined - gap, combined);
  report.verdict = gap <= options.agreement_sigmas * combined ? Verdict::kPass
                                                              : Verdict::kFail;

  report.details["lambda"] = lambda;
  report.details["E_log_Z_T"] = mean_log_z.mean;
  report.details["E_log_Z_T_stderr"] = mean_log_z.std_error;
  report.details["E_log_Z_T_delta_bias"] =
      local.empty() ? 0.0 : delta_bias / static_cast<double>(local.size());
  report.details["E_vol_T"] = mean_vol.mean;
  report.details["E_vol_T_stderr"] = mean_vol.std_error;
  report.details["lambda_exp_neg_E_log_Z_T"] = lambda * std::exp(-mean_log_z.mean);
  report.details["lambda_exp_neg_lambda_E_vol_T"] =
      lambda * std::exp(-lambda * mean_vol.mean);
  report.details["log_bound_violations"] = log_bound_violations;
  if (draws) *draws = std::move(local);
  return report;
}

CheckReport verify_inequality_32(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule,
                                 std::size_t v_per_sample, CounterRng& rng) {
  if (v_per_sample == 0) throw std::invalid_argument("v_per_sample must be positive");
  CheckReport report;
  report.name = "inequality32";
  const int d = region.dim();
  const double volume = region.volume();
  const double reach = 2.0 * unit_ball_radius(d);

  ChainState state(region, params, rng(), 0);
  CounterRng probe = rng.split(1);
  std::vector<double> alpha_series;
  std::vector<double> inside;
  Point v(static_cast<std::size_t>(d));
  run_chain(state, schedule, [&](const ChainState& st, std::size_t) {
    alpha_series.push_back(static_cast<double>(st.config().size()) / volume);
    double total = 0.0;
    for (std::size_t j = 0; j < v_per_sample; ++j) {
      region.sample_uniform(probe, v);
      total += static_cast<double>(st.config().count_within(v, reach));
    }
    inside.push_back(total / static_cast<double>(v_per_sample));
  });

  const Estimate lhs = batch_means(inside);
  const Estimate rhs = scaled(batch_means(alpha_series), std::ldexp(1.0, d));
  report.lhs = lhs.mean;
  report.stderr_lhs = lhs.std_error;
  report.rhs = rhs.mean;
  report.stderr_rhs = rhs.std_error;
  const double allowed = rhs.mean * (1.0 + 3.0 * rhs.relative_error());
  report.margin_sigmas = sigmas(rhs.mean - lhs.mean, combined_stderr(lhs, rhs));
  report.verdict = lhs.mean <= allowed ? Verdict::kPass : Verdict::kFail;
  report.details["lambda"] = params.lambda;
  report.details["samples"] = inside.size();
  report.details["v_per_sample"] = v_per_sample;
  return report;
}

double geometric_lemma_bound(int d) { return 2.0 * std::pow(3.0, 0.5 * d); }

Estimate expected_neighbourhood_volume(const Region& s, std::size_t outer,
                                       std::size_t inner, CounterRng& rng) {
  if (outer == 0 || inner == 0) throw std::invalid_argument("zero samples");
  const int d = s.dim();
  const double reach = 2.0 * unit_ball_radius(d);
  const double ball = std::ldexp(1.0, d);  // vol B_{2 r_d} = 2^d
  std::vector<double> values(outer);
  Point u(static_cast<std::size_t>(d));
  Point x(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < outer; ++i) {
    s.sample_uniform(rng, u);
    const BallSpec around{u, reach};
    std::size_t hits = 0;
    for (std::size_t j = 0; j < inner; ++j) {
      sample_uniform_ball(around, rng, x);
      if (s.contains(x)) ++hits;
    }
    values[i] = ball * static_cast<double>(hits) / static_cast<double>(inner);
  }
  // Draws are independent, so every draw is its own batch.
  return batch_means(values, values.size());
}

CheckReport check_geometric_lemma(int d, const GeometricOptions& options,
                                  CounterRng& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  CheckReport report;
  report.name = "geometric";
  const double reach = 2.0 * unit_ball_radius(d);
  const double bound = geometric_lemma_bound(d);
  const Point origin(static_cast<std::size_t>(d));

  struct TestSet {
    std::string label;
    Region region;
  };
  std::vector<TestSet> sets;
  sets.push_back({"full_ball", Region::ball(BallSpec{origin, reach})});
  for (std::size_t i = 0; i < options.random_sets; ++i) {
    // Outer ball inside B_{2 r_d}(0).
    const Point c = sample_uniform_ball(BallSpec{origin, 0.8 * reach}, rng);
    const double room = reach - norm(c);
    const double outer_r = room * (0.3 + 0.7 * rng.uniform());
    if (i % 2 == 0) {
      sets.push_back({"sub_ball", Region::ball(BallSpec{c, outer_r})});
      continue;
    }
    const double inner_r = outer_r * (0.2 + 0.6 * rng.uniform());
    const BallSpec outer{c, outer_r};
    const BallSpec inner{c, inner_r};
    auto member = [inner](const Point& x) {
      return distance_squared(x, inner.center) > inner.radius * inner.radius;
    };
    const double vol = ball_volume(outer_r, d) - ball_volume(inner_r, d);
    sets.push_back({"shell", Region::custom(RegionKind::kCustom, d, member,
                                            outer, vol)});
  }

  nlohmann::json per_set = nlohmann::json::array();
  bool all_pass = true;
  double worst_ratio = -1.0;
  for (const TestSet& set : sets) {
    const Estimate e = expected_neighbourhood_volume(
        set.region, options.outer_samples, options.inner_samples, rng);
    const bool pass = e.mean <= bound * (1.0 + 3.0 * e.relative_error());
    all_pass = all_pass && pass;
    per_set.push_back({{"set", set.label},
                       {"estimate", e.mean},
                       {"stderr", e.std_error},
                       {"pass", pass}});
    const double ratio = e.mean / bound;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      report.lhs = e.mean;
      report.stderr_lhs = e.std_error;
      report.margin_sigmas = sigmas(bound - e.mean, e.std_error);
    }
  }
  report.rhs = bound;
  report.verdict = all_pass ? Verdict::kPass : Verdict::kFail;
  report.details["d"] = d;
  report.details["sets"] = per_set;
  return report;
}

}  // namespace hsm
