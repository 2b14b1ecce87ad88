#include <benchmark/benchmark.h>

#include <vector>

#include "hsm/bounds.hpp"
#include "hsm/model.hpp"
#include "hsm/partition.hpp"
#include "hsm/sampler.hpp"

namespace {

// Packing of k centres in the ball of volume 4k: cell list against the
// all-pairs scan.
std::vector<hsm::Point> packed_points(int d, int k, hsm::Region& region) {
  hsm::CounterRng rng(1);
  hsm::Configuration config(d, region.bounding_ball());
  std::vector<hsm::Point> pts;
  for (int tries = 0; static_cast<int>(pts.size()) < k && tries < 100 * k; ++tries) {
    hsm::Point p = region.sample_uniform(rng);
    if (config.insertion_allowed(p)) {
      config.add(p);
      pts.push_back(p);
    }
  }
  return pts;
}

void BM_IsPackingCellList(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  hsm::Region region = hsm::Region::ball_volume(4.0 * k, d);
  const auto pts = packed_points(d, k, region);
  hsm::Configuration config(d, region.bounding_ball());
  for (const auto& p : pts) config.add(p);
  for (auto _ : state) benchmark::DoNotOptimize(hsm::is_packing(config).result);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_IsPackingCellList)->Args({2, 100})->Args({2, 1000})->Args({3, 1000});

void BM_IsPackingAllPairs(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  hsm::Region region = hsm::Region::ball_volume(4.0 * k, d);
  const auto pts = packed_points(d, k, region);
  const double two_r = 2.0 * hsm::unit_ball_radius(d);
  for (auto _ : state) benchmark::DoNotOptimize(hsm::points_form_packing(pts, two_r));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_IsPackingAllPairs)->Args({2, 100})->Args({2, 1000})->Args({3, 1000});

void BM_GcmcStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  hsm::ChainState chain(hsm::Region::ball_volume(100.0, d), hsm::FugacityParams{1.0, d}, 3);
  for (int i = 0; i < 100000; ++i) hsm::gcmc_step(chain);
  for (auto _ : state) benchmark::DoNotOptimize(hsm::gcmc_step(chain));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GcmcStep)->Arg(1)->Arg(2)->Arg(3)->Arg(6);

void BM_LambertW(benchmark::State& state) {
  double x = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hsm::lambert_w0(x));
    x = x < 1e12 ? x * 1.37 : 1e-6;
  }
}
BENCHMARK(BM_LambertW);

void BM_DensityBound(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hsm::theorem1_log_bound(d, hsm::proof_log_lambda(d)));
  }
}
BENCHMARK(BM_DensityBound)->Arg(100)->Arg(800);

void BM_ZhatHitOrMiss(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const hsm::Region region = hsm::Region::interval(20.0);
  hsm::CounterRng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hsm::canonical_zhat_mc(region, k, 1000, rng).value);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ZhatHitOrMiss)->Arg(2)->Arg(6);

}  // namespace
BENCHMARK_MAIN();
