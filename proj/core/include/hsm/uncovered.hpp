#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "hsm/estimate.hpp"
#include "hsm/model.hpp"
#include "hsm/report.hpp"
#include "hsm/sampler.hpp"

namespace hsm {

// The externally uncovered set T around v: points x of the host with
// |x - v| <= 2 r_d and |x - y| > 2 r_d for every centre y with
// |y - v| > 2 r_d. Only centres with |y - v| <= 4 r_d can block such an x,
// so farther ones are dropped.
class UncoveredRegion {
 public:
  UncoveredRegion(const Region& host, Point v,
                  const std::vector<Point>& centers);

  int dim() const { return dim_; }
  const Point& v() const { return v_; }
  const std::vector<Point>& external_centers() const { return *external_; }
  const Region& host() const { return host_; }
  // Membership-oracle region with bounding ball B_{2 r_d}(v). In d = 1 with
  // an interval host, T is itself an interval and carries its exact length.
  const Region& region() const { return region_; }
  bool contains(const Point& x) const { return region_.contains(x); }

 private:
  int dim_;
  Region host_;
  Point v_;
  std::shared_ptr<const std::vector<Point>> external_;
  Region region_;
};

// T built from the centres of `config` and the point v.
UncoveredRegion make_uncovered(const Region& host, const Configuration& config,
                               const Point& v);

// Two-part experiment: one configuration from a chain run with `schedule`
// (seeded from rng), and an independent uniform v in the region.
UncoveredRegion sample_uncovered(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule, CounterRng& rng);

// E[vol T] over `reps` retained chain samples, each with a fresh v; vol T by
// hit-or-miss with `mc_vol_samples` draws (exact for d = 1 intervals).
Estimate estimate_evol_T(const Region& region, const FugacityParams& params,
                         const Schedule& schedule, std::size_t reps,
                         std::size_t mc_vol_samples, CounterRng& rng);

struct IdentityOptions {
  std::size_t reps = 1000;           // T-draws
  int k_max = 8;                     // series order for Z_T
  std::size_t per_k_samples = 4096;  // hit-or-miss draws per Z^_T(k)
  double zt_tolerance = 1e-6;        // allowed ideal-gas tail
  double agreement_sigmas = 4.0;
};

// Per-draw record of the identity experiment.
struct TDraw {
  double z = 1.0;
  double z_std_error = 0.0;
  double truncation = 0.0;
  double log_z = 0.0;
  double volume = 0.0;
  double volume_std_error = 0.0;
  double lambda_dz_over_z = 0.0;
  std::size_t external = 0;
  std::size_t inside = 0;  // |X ∩ B_{2 r_d}(v)|

  // log Z_T <= lambda vol(T) up to truncation and four standard errors.
  bool satisfies_log_bound(double lambda) const;
};

// alpha_S(lambda) against lambda E[1 / Z_T]. Details carry the Jensen chain
// lambda e^{-E log Z_T} and lambda e^{-lambda E vol T}, with a delta-method
// estimate of the log-of-estimate bias.
CheckReport verify_identity_31(const Region& region,
                               const FugacityParams& params,
                               const Schedule& schedule,
                               const IdentityOptions& options, CounterRng& rng,
                               std::vector<TDraw>* draws = nullptr);

// E[|X ∩ B_{2 r_d}(v)|] <= 2^d alpha_S(lambda), up to three relative
// standard errors of the right-hand side.
CheckReport verify_inequality_32(const Region& region,
                                 const FugacityParams& params,
                                 const Schedule& schedule,
                                 std::size_t v_per_sample, CounterRng& rng);

struct GeometricOptions {
  std::size_t outer_samples = 2000;  // u uniform in S
  std::size_t inner_samples = 500;   // hit-or-miss per u
  std::size_t random_sets = 10;      // sub-balls and shells
};

// E[vol(B_{2 r_d}(u) ∩ S)] <= 2 * 3^{d/2} for S ⊆ B_{2 r_d}(0): the full
// ball plus random sub-balls and shells. The first entry of
// details["sets"] is always the full ball.
CheckReport check_geometric_lemma(int d, const GeometricOptions& options,
                                  CounterRng& rng);

// Neighbourhood volume bound 2 * 3^{d/2}.
double geometric_lemma_bound(int d);

// E[vol(B_{2 r_d}(u) ∩ S)] by nested hit-or-miss.
Estimate expected_neighbourhood_volume(const Region& s, std::size_t outer,
                                       std::size_t inner, CounterRng& rng);

}  // namespace hsm
