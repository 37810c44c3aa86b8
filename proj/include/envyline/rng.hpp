#pragma once

#include <cstdint>

// Deterministic randomness for property tests and samplers. SplitMix64 is a
// counter-based generator: each draw advances the counter by a fixed odd
// constant and mixes it, so streams can be split by deriving a child seed
// from any draw.

namespace envyline {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  // Independent child stream; the parent advances by one draw.
  SplitMix64 split() { return SplitMix64(next_u64()); }

  static constexpr const char* kAlgorithm = "splitmix64";

 private:
  std::uint64_t state_;
};

}  // namespace envyline
