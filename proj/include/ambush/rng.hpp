#pragma once

#include <cstdint>
#include <random>

namespace ambush {

// Portable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; doubles are produced from the top
// 53 bits so results do not depend on the library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), n > 0, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-index streams
// (seed, index) so parallel and serial consumers see the same numbers.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

// Counter-based uniform in [0, 1) for (seed, index, draw).
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t index,
                                 std::uint64_t draw) {
  return static_cast<double>(mix64(stream_seed(seed, index) + draw) >> 11) *
         0x1.0p-53;
}

}  // namespace ambush
