#pragma once

#include <cstdint>
#include <limits>

namespace hsm {

// Counter-based generator. Draw i of the stream keyed by (seed, stream) is
// mix(key + (i + 1) * kGamma), so any position can be reached in O(1) and
// streams for different chains never share state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Standard normal deviate.
  double normal();

  // Independent generator for a child stream; does not advance this one.
  CounterRng split(std::uint64_t stream) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Key derivation used for (seed, chain id) pairs.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream);

}  // namespace hsm
