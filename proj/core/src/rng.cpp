#include "hsm/rng.hpp"

#include <cmath>
#include <numbers>

namespace hsm {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed + kGamma) ^ mix64(stream * 0xd1342543de82ef95ULL + 1));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(derive_key(seed, stream)) {}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t n) {
  // Lemire's multiply-shift with rejection of the biased low zone.
  std::uint64_t x = (*this)();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double CounterRng::normal() {
  // Box-Muller; one deviate per call keeps the stream position a pure
  // function of the number of calls.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CounterRng CounterRng::split(std::uint64_t stream) const {
  CounterRng child;
  child.key_ = mix64(key_ ^ derive_key(stream, 0x5851f42d4c957f2dULL));
  return child;
}

}  // namespace hsm
