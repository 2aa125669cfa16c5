#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rxsynth {

using Rng = std::mt19937_64;

// The draws below are written out instead of using <random> distributions so
// that seeded output is identical across standard library implementations.

/// Uniform integer in [0, n). n must be > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod n
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return static_cast<std::size_t>(x % bound);
}

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

/// splitmix64 finalizer over (seed, index); used to give every instance or
/// attempt its own independent stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rxsynth
