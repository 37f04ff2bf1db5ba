#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

// Data-parallel inner loops behind graph construction and configuration
// sampling: scalar reference implementations plus SIMD variants (AVX2 on
// x86-64, NEON on aarch64) selected once at startup. Every variant must
// produce bit-identical output; the equivalence tests enforce that.
namespace bootperc::kernels {

// 52-bit uniform in [0, 1) from a raw 64-bit generator word.
inline double unit_double_from_bits(std::uint64_t w) {
  return std::bit_cast<double>((w >> 12) | 0x3FF0000000000000ull) - 1.0;
}

struct KernelTable {
  const char* name;

  // Writes every index i with (xs[i]-qx)^2 + (ys[i]-qy)^2 <= r2 to out,
  // ascending. Returns the hit count. out must have room for n entries.
  std::size_t (*radius_hits)(const double* xs, const double* ys,
                             std::size_t n, double qx, double qy, double r2,
                             std::int32_t* out);

  // flags[i] = (u[i] < p). Returns the number of set flags.
  std::size_t (*bernoulli_mask)(const double* u, std::size_t n, double p,
                                std::uint8_t* flags);

  // out[i] = unit_double_from_bits(words[i]).
  void (*unit_doubles)(const std::uint64_t* words, std::size_t n,
                       double* out);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when the AVX2 TU is compiled out
const KernelTable* neon_table();  // nullptr off aarch64

// Table picked at startup: best SIMD variant the CPU supports, else scalar.
// Environment BOOTPERC_SIMD=scalar (or force_scalar(true)) overrides.
const KernelTable& active();
void force_scalar(bool on);

}  // namespace bootperc::kernels
