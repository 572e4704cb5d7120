#pragma once

#include <cstdint>

namespace wqed::rng {

/// SplitMix64 finalizer. Counter-based: the value for stream element i is a
/// pure function of (seed, i), so any realization can be reproduced in
/// isolation and results do not depend on evaluation order.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
  return mix(mix(seed) ^ (counter * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL));
}

/// Uniform in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(at(seed, counter) >> 11) * 0x1.0p-53;
}

/// Per-realization seed derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return at(master, index ^ 0x5851f42d4c957f2dULL);
}

}  // namespace wqed::rng
