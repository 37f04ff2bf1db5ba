#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "bootperc/kernels.hpp"

namespace bootperc {

// SplitMix64 step: advances state by the golden-gamma increment and returns
// the mixed output. Used for seeding and seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stable derivation of an independent stream seed from a master seed, a
// purpose tag and two indices (e.g. grid position and trial number). The
// recipe (FNV-1a tag hash XOR-folded with the indices through SplitMix64
// steps) is part of the reproducibility contract; do not change it.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t i = 0, std::uint64_t j = 0);

// xoshiro256++ (Blackman/Vigna), state seeded by SplitMix64 expansion.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64(seed);
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

  // Uniform in [0, 1), 52 random bits; same conversion as the unit_doubles
  // kernel so bulk and one-at-a-time paths agree bit for bit.
  double next_unit() { return kernels::unit_double_from_bits(next()); }

  void fill(std::uint64_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = next();
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Exact Poisson(lambda) draw by the product method on chunks small enough
// that exp(-chunk) stays a normal double. No normal approximation at any
// lambda; cost is O(lambda) uniforms.
std::uint64_t poisson_draw(double lambda, Xoshiro256pp& rng);

}  // namespace bootperc
