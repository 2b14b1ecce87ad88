#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hsm/estimate.hpp"
#include "hsm/model.hpp"
#include "hsm/rng.hpp"

namespace hsm {

// Fugacity normalized by the volume of one sphere.
struct FugacityParams {
  double lambda = 1.0;
  int d = 1;

  void validate() const;
};

struct Schedule {
  std::size_t burn_in = 0;
  std::size_t n_samples = 0;
  std::size_t thinning = 1;

  // burn-in 1e5 * max(1, vol), thinning ceil(10 * vol), 20 batches of 100.
  static Schedule defaults(double volume);
};

enum class MoveKind { kInsert, kDelete, kTranslate };

struct MoveCounters {
  std::uint64_t steps_taken = 0;
  std::uint64_t proposed_inserts = 0;
  std::uint64_t proposed_deletes = 0;
  std::uint64_t proposed_moves = 0;
  std::uint64_t accepted_inserts = 0;
  std::uint64_t accepted_deletes = 0;
  std::uint64_t accepted_moves = 0;
};

// One grand-canonical chain. The configuration is a valid packing after
// every step.
class ChainState {
 public:
  ChainState(Region region, FugacityParams params, std::uint64_t seed,
             std::uint64_t chain_id = 0);

  const Region& region() const { return region_; }
  const FugacityParams& params() const { return params_; }
  const Configuration& config() const { return config_; }
  const MoveCounters& counters() const { return counters_; }
  CounterRng& rng() { return rng_; }

  // Displacement radius of translate moves; defaults to 2 r_d.
  double translate_radius() const { return translate_radius_; }
  void set_translate_radius(double r);

  // Replaces the configuration; the caller guarantees a packing inside the
  // region.
  void reset_config(const std::vector<Point>& centers);

  bool propose_insert();
  bool propose_delete();
  bool propose_translate();

 private:
  Region region_;
  FugacityParams params_;
  Configuration config_;
  CounterRng rng_;
  MoveCounters counters_;
  double volume_;
  double translate_radius_;
  Point scratch_;
};

// One move chosen uniformly among insert / delete / translate.
MoveKind gcmc_step(ChainState& state);

struct RunOptions {
  std::uint64_t seed = 0;
  std::size_t chains = 1;
  std::size_t threads = 1;
  std::size_t probes_per_sample = 64;
  std::size_t n_batches = kDefaultBatches;
  double translate_radius = 0.0;  // 0 selects 2 r_d
};

struct ChainObservables {
  Estimate alpha;           // |X| / vol(S)
  Estimate free_volume;     // fraction of S at distance > 2 r_d from X
  Estimate count_mean;      // |X|
  Estimate count_variance;  // var |X|
  Estimate accept_insert;
  Estimate accept_delete;
  Estimate accept_translate;
  std::vector<std::size_t> count_histogram;  // over retained samples
  MoveCounters counters;                     // summed over chains
  std::vector<Point> final_centers;          // chain 0 after the last sample
};

// Called with the state and the retained-sample index after each thinning
// window.
using SampleVisitor = std::function<void(const ChainState&, std::size_t)>;

// Runs one chain through burn-in and the sampling stage.
void run_chain(ChainState& state, const Schedule& schedule,
               const SampleVisitor& visit);

// Runs `options.chains` independent chains keyed by (seed, chain id) and
// merges their estimates in chain-id order.
ChainObservables run_observables(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule,
                                 const RunOptions& options);

Estimate estimate_alpha(const Region& region, const FugacityParams& params,
                        const Schedule& schedule, const RunOptions& options);
Estimate estimate_free_volume(const Region& region,
                              const FugacityParams& params,
                              const Schedule& schedule,
                              const RunOptions& options);
Estimate estimate_count_variance(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule,
                                 const RunOptions& options);

// Fraction of `probes` uniform points of the region that could take a new
// centre.
double free_fraction(const Configuration& config, const Region& region,
                     std::size_t probes, CounterRng& rng);

}  // namespace hsm
