#pragma once

#include <cstdint>

#include "socnewton/errors.hpp"

// Deterministic random streams.
//
// Generator: xoshiro256++ with its 256-bit state filled from SplitMix64.
// Doubles take the top 53 bits of a 64-bit draw, giving uniforms on [0,1).
//
// Stream derivation rule: a child seed is obtained from a parent seed and a
// 64-bit index as
//     child = mix64(parent + index * 0x9E3779B97F4A7C15)
// where mix64 is the SplitMix64 finalizer. Generators use this twice: once to
// derive a per-instance seed from (suite seed, instance index), and once to
// derive a per-draw-site stream from (instance seed, site id). Every random
// draw site in the library has a fixed site id (see Site below), so adding or
// reordering draws at one site never perturbs another.

namespace socnewton::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 output finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return mix64(parent + index * kGoldenGamma);
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += kGoldenGamma;
    return mix64(state);
  }
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& word : s_) word = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1).
  double uniform01_open() {
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    return u;
  }

  // Uniform on [lo,hi).
  double uniform(double lo, double hi) {
    if (!(lo < hi)) throw InvalidInputError("uniform: need lo < hi");
    return lo + (hi - lo) * uniform01();
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Fixed ids for every random draw site in the library.
enum class Site : std::uint64_t {
  kMatrixEntries = 1,   // dense T entries
  kScale = 2,           // the u rescaling draw for dense T
  kSingularValues = 3,  // sparse T singular values
  kRotations = 4,       // sparse T fill-in rotations
  kPlanted = 5,         // planted solution (tail entries, then t)
  kEigBasis = 6,        // SPD orthonormal basis source matrix
  kEigValues = 7,       // SPD eigenvalues
  kStartPoints = 8,     // random start points (region sweeps, tests)
  kRhs = 9,             // LSOCCP right-hand side q
};

inline Xoshiro256pp make_stream(std::uint64_t seed, Site site) {
  return Xoshiro256pp(derive_seed(seed, static_cast<std::uint64_t>(site)));
}

}  // namespace socnewton::rng
