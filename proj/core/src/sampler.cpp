#include "hsm/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hsm {

void FugacityParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("fugacity must be positive and finite");
  }
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

Schedule Schedule::defaults(double volume) {
  Schedule s;
  s.burn_in = static_cast<std::size_t>(1e5 * std::max(1.0, volume));
  s.thinning = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(10.0 * volume)));
  s.n_samples = 20 * 100;
  return s;
}

ChainState::ChainState(Region region, FugacityParams params,
                       std::uint64_t seed, std::uint64_t chain_id)
    : region_(std::move(region)),
      params_(params),
      config_(params.d, region_.bounding_ball()),
      rng_(seed, 2 * chain_id),
      volume_(0.0),
      translate_radius_(2.0 * unit_ball_radius(params.d)),
      scratch_(static_cast<std::size_t>(params.d)) {
  params_.validate();
  if (region_.dim() != params_.d) {
    throw std::invalid_argument("region and fugacity dimension differ");
  }
  if (!region_.has_exact_volume()) {
    throw std::invalid_argument(
        "grand-canonical sampling needs a region of exact volume");
  }
  volume_ = region_.volume();
  if (!(volume_ > 0.0)) throw std::invalid_argument("region has zero volume");
}

void ChainState::set_translate_radius(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("translate radius must be positive");
  translate_radius_ = r;
}

void ChainState::reset_config(const std::vector<Point>& centers) {
  config_.clear();
  for (const Point& p : centers) config_.add(p);
}

bool ChainState::propose_insert() {
  ++counters_.proposed_inserts;
  region_.sample_uniform(rng_, scratch_);
  const double ratio =
      params_.lambda * volume_ / static_cast<double>(config_.size() + 1);
  // The uniform is drawn unconditionally so the stream position does not
  // depend on the overlap test.
  const double u = rng_.uniform();
  if (u >= ratio || !config_.insertion_allowed(scratch_)) return false;
  config_.add(scratch_);
  ++counters_.accepted_inserts;
  return true;
}

bool ChainState::propose_delete() {
  ++counters_.proposed_deletes;
  const std::size_t k = config_.size();
  if (k == 0) return false;
  const std::size_t i = rng_.below(k);
  const double ratio = static_cast<double>(k) / (params_.lambda * volume_);
  if (rng_.uniform() >= ratio) return false;
  config_.remove(i);
  ++counters_.accepted_deletes;
  return true;
}

bool ChainState::propose_translate() {
  ++counters_.proposed_moves;
  const std::size_t k = config_.size();
  if (k == 0) return false;
  const std::size_t i = rng_.below(k);
  const BallSpec step{config_.center(i), translate_radius_};
  sample_uniform_ball(step, rng_, scratch_);
  if (!region_.contains(scratch_) || !config_.placement_allowed(scratch_, i)) {
    return false;
  }
  config_.move(i, scratch_);
  ++counters_.accepted_moves;
  return true;
}

MoveKind gcmc_step(ChainState& state) {
  MoveKind kind;
  switch (state.rng().below(3)) {
    case 0:
      kind = MoveKind::kInsert;
      state.propose_insert();
      break;
    case 1:
      kind = MoveKind::kDelete;
      state.propose_delete();
      break;
    default:
      kind = MoveKind::kTranslate;
      state.propose_translate();
      break;
  }
  assert(is_packing(state.config()).result);
  return kind;
}

void run_chain(ChainState& state, const Schedule& schedule,
               const SampleVisitor& visit) {
  for (std::size_t s = 0; s < schedule.burn_in; ++s) gcmc_step(state);
  const std::size_t thin = std::max<std::size_t>(1, schedule.thinning);
  for (std::size_t i = 0; i < schedule.n_samples; ++i) {
    for (std::size_t s = 0; s < thin; ++s) gcmc_step(state);
    if (visit) visit(state, i);
  }
}

double free_fraction(const Configuration& config, const Region& region,
                     std::size_t probes, CounterRng& rng) {
  if (probes == 0) return 0.0;
  Point p(static_cast<std::size_t>(region.dim()));
  std::size_t free = 0;
  for (std::size_t j = 0; j < probes; ++j) {
    region.sample_uniform(rng, p);
    if (config.insertion_allowed(p)) ++free;
  }
  return static_cast<double>(free) / static_cast<double>(probes);
}

namespace {

// Batch-means estimate of a ratio of counts: one ratio per batch.
Estimate ratio_batches(const std::vector<std::uint64_t>& acc,
                       const std::vector<std::uint64_t>& prop,
                       std::size_t n_batches) {
  const std::size_t n = acc.size();
  Estimate e;
  e.n_samples = n;
  std::uint64_t total_acc = 0;
  std::uint64_t total_prop = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total_acc += acc[i];
    total_prop += prop[i];
  }
  if (total_prop == 0) return e;
  e.mean = static_cast<double>(total_acc) / static_cast<double>(total_prop);
  const std::size_t batches = std::min(n_batches, n);
  e.n_batches = batches;
  if (batches < 2) return e;
  const std::size_t size = n / batches;
  std::vector<double> rates;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t lo = b * size;
    const std::size_t hi = (b + 1 == batches) ? n : lo + size;
    std::uint64_t a = 0;
    std::uint64_t p = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      a += acc[i];
      p += prop[i];
    }
    if (p > 0) rates.push_back(static_cast<double>(a) / static_cast<double>(p));
  }
  if (rates.size() < 2) return e;
  double m = 0.0;
  for (double r : rates) m += r;
  m /= static_cast<double>(rates.size());
  double ss = 0.0;
  for (double r : rates) ss += (r - m) * (r - m);
  e.std_error = std::sqrt(ss / static_cast<double>(rates.size() - 1) /
                          static_cast<double>(rates.size()));
  return e;
}

ChainObservables observe_one_chain(const Region& region,
                                   const FugacityParams& params,
                                   const Schedule& schedule,
                                   const RunOptions& options,
                                   std::uint64_t chain_id) {
  ChainState state(region, params, options.seed, chain_id);
  if (options.translate_radius > 0.0) {
    state.set_translate_radius(options.translate_radius);
  }
  CounterRng probe_rng(options.seed, 2 * chain_id + 1);
  const double volume = region.volume();
  const std::size_t n = schedule.n_samples;

  std::vector<double> counts(n);
  std::vector<double> fv(options.probes_per_sample > 0 ? n : 0);
  std::vector<std::uint64_t> acc_i(n), prop_i(n), acc_d(n), prop_d(n),
      acc_t(n), prop_t(n);
  ChainObservables obs;

  for (std::size_t s = 0; s < schedule.burn_in; ++s) gcmc_step(state);
  MoveCounters last = state.counters();
  const std::size_t thin = std::max<std::size_t>(1, schedule.thinning);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < thin; ++s) gcmc_step(state);
    const MoveCounters& c = state.counters();
    acc_i[i] = c.accepted_inserts - last.accepted_inserts;
    prop_i[i] = c.proposed_inserts - last.proposed_inserts;
    acc_d[i] = c.accepted_deletes - last.accepted_deletes;
    prop_d[i] = c.proposed_deletes - last.proposed_deletes;
    acc_t[i] = c.accepted_moves - last.accepted_moves;
    prop_t[i] = c.proposed_moves - last.proposed_moves;
    last = c;

    const std::size_t k = state.config().size();
    counts[i] = static_cast<double>(k);
    if (obs.count_histogram.size() <= k) obs.count_histogram.resize(k + 1, 0);
    ++obs.count_histogram[k];
    if (!fv.empty()) {
      fv[i] = free_fraction(state.config(), region, options.probes_per_sample,
                            probe_rng);
    }
  }
  obs.counters = state.counters();
  obs.final_centers = state.config().centers();
  obs.counters.steps_taken = schedule.burn_in + n * thin;

  obs.count_mean = batch_means(counts, options.n_batches);
  obs.alpha = scaled(obs.count_mean, 1.0 / volume);
  if (!fv.empty()) obs.free_volume = batch_means(fv, options.n_batches);

  std::vector<double> dev2(n);
  const double m = obs.count_mean.mean;
  for (std::size_t i = 0; i < n; ++i) dev2[i] = (counts[i] - m) * (counts[i] - m);
  obs.count_variance = batch_means(dev2, options.n_batches);
  if (n > 1) {
    obs.count_variance = scaled(obs.count_variance,
                                static_cast<double>(n) / static_cast<double>(n - 1));
  }

  obs.accept_insert = ratio_batches(acc_i, prop_i, options.n_batches);
  obs.accept_delete = ratio_batches(acc_d, prop_d, options.n_batches);
  obs.accept_translate = ratio_batches(acc_t, prop_t, options.n_batches);
  return obs;
}

void add_counters(MoveCounters& into, const MoveCounters& c) {
  into.steps_taken += c.steps_taken;
  into.proposed_inserts += c.proposed_inserts;
  into.proposed_deletes += c.proposed_deletes;
  into.proposed_moves += c.proposed_moves;
  into.accepted_inserts += c.accepted_inserts;
  into.accepted_deletes += c.accepted_deletes;
  into.accepted_moves += c.accepted_moves;
}

}  // namespace

ChainObservables run_observables(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule,
                                 const RunOptions& options) {
  params.validate();
  if (schedule.n_samples == 0) throw std::invalid_argument("schedule has no samples");
  const std::size_t chains = std::max<std::size_t>(1, options.chains);
  const std::size_t threads =
      std::clamp<std::size_t>(options.threads, 1, chains);

  std::vector<ChainObservables> per_chain(chains);
  std::vector<std::exception_ptr> errors(chains);
  auto worker = [&](std::size_t t) {
    for (std::size_t c = t; c < chains; c += threads) {
      try {
        per_chain[c] = observe_one_chain(region, params, schedule, options, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ChainObservables out = per_chain[0];
  for (std::size_t c = 1; c < chains; ++c) {
    const ChainObservables& o = per_chain[c];
    out.alpha = merge(out.alpha, o.alpha);
    out.free_volume = merge(out.free_volume, o.free_volume);
    out.count_mean = merge(out.count_mean, o.count_mean);
    out.count_variance = merge(out.count_variance, o.count_variance);
    out.accept_insert = merge(out.accept_insert, o.accept_insert);
    out.accept_delete = merge(out.accept_delete, o.accept_delete);
    out.accept_translate = merge(out.accept_translate, o.accept_translate);
    if (out.count_histogram.size() < o.count_histogram.size()) {
      out.count_histogram.resize(o.count_histogram.size(), 0);
    }
    for (std::size_t k = 0; k < o.count_histogram.size(); ++k) {
      out.count_histogram[k] += o.count_histogram[k];
    }
    add_counters(out.counters, o.counters);
  }
  return out;
}

Estimate estimate_alpha(const Region& region, const FugacityParams& params,
                        const Schedule& schedule, const RunOptions& options) {
  RunOptions o = options;
  o.probes_per_sample = 0;
  return run_observables(region, params, schedule, o).alpha;
}

Estimate estimate_free_volume(const Region& region,
                              const FugacityParams& params,
                              const Schedule& schedule,
                              const RunOptions& options) {
  return run_observables(region, params, schedule, options).free_volume;
}

Estimate estimate_count_variance(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule,
                                 const RunOptions& options) {
  RunOptions o = options;
  o.probes_per_sample = 0;
  return run_observables(region, params, schedule, o).count_variance;
}

}  // namespace hsm
