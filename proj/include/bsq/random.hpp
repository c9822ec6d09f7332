#pragma once

#include <cstdint>

#include "bsq/types.hpp"

namespace bsq {

// SplitMix64: tiny counter-friendly generator used for reproducible field
// synthesis; sequences depend only on the seed, never on call history
// elsewhere in the program.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  Real uniform() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Order-free mixing of a seed with a lattice mode, for grid-independent
// per-mode draws.
inline std::uint64_t mode_seed(std::uint64_t seed, int xi1, int xi2) {
  std::uint64_t h = seed;
  h ^= (static_cast<std::uint64_t>(static_cast<std::uint32_t>(xi1)) << 32) |
       static_cast<std::uint64_t>(static_cast<std::uint32_t>(xi2));
  SplitMix64 mix(h);
  mix.next();
  return mix.next();
}

}  // namespace bsq
