#pragma once

#include <cstdint>

// Counter-based randomness: every indicator is a pure function of (seed, index),
// so any single edge bit is reproducible without generating its predecessors and
// generation parallelizes trivially.
//
// The generator is SplitMix64 in counter mode: state = seed + (index+1)*GOLDEN,
// output = SplitMix64 finalizer (Steele, Lea, Flood 2014). The finalizer is a
// full-avalanche 64-bit mixer, which is what makes independent streams out of
// consecutive counters.

namespace dcw {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_finalize(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// idx-th element of the SplitMix64 stream seeded at `seed`.
constexpr std::uint64_t counter_rand(std::uint64_t seed, std::uint64_t idx) {
  return splitmix64_finalize(seed + (idx + 1) * kGolden);
}

// Uniform double in [0,1) from 53 high bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t idx) {
  return static_cast<double>(counter_rand(seed, idx) >> 11) * 0x1.0p-53;
}

// Bernoulli(p) draw for ordered pair (i,j) of an N-vertex graph.
// p = 1 must always produce an edge, so it is special-cased: the integer
// threshold round(p * 2^64) cannot represent 2^64.
inline bool edge_indicator(std::uint64_t seed, std::uint64_t i, std::uint64_t j,
                           std::uint64_t n, double p) {
  if (p >= 1.0) return true;
  const double scaled = p * 18446744073709551616.0; // p * 2^64
  if (scaled >= 18446744073709551616.0) return true; // p within 1 ulp of 1
  const std::uint64_t threshold = static_cast<std::uint64_t>(scaled);
  return counter_rand(seed, i * n + j) < threshold;
}

// Documented hash deriving per-trial seeds from a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return counter_rand(master, index);
}

} // namespace dcw
