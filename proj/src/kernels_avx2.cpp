// Compiled with -mavx2 on x86-64 (see src/CMakeLists.txt); collapses to a
// nullptr table elsewhere. Uses separate mul/add rather than FMA so results
// stay bit-identical to the scalar reference built with -ffp-contract=off.
#include "bootperc/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace bootperc::kernels {
namespace {

std::size_t radius_hits_avx2(const double* xs, const double* ys,
                             std::size_t n, double qx, double qy, double r2,
                             std::int32_t* out) {
  const __m256d qxv = _mm256_set1_pd(qx);
  const __m256d qyv = _mm256_set1_pd(qy);
  const __m256d r2v = _mm256_set1_pd(r2);
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), qxv);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), qyv);
    const __m256d d2 =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, r2v, _CMP_LE_OQ));
    if (mask == 0) continue;
    for (int lane = 0; lane < 4; ++lane) {
      if (mask & (1 << lane)) out[hits++] = static_cast<std::int32_t>(i + lane);
    }
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    if (dx * dx + dy * dy <= r2) out[hits++] = static_cast<std::int32_t>(i);
  }
  return hits;
}

std::size_t bernoulli_mask_avx2(const double* u, std::size_t n, double p,
                                std::uint8_t* flags) {
  const __m256d pv = _mm256_set1_pd(p);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask =
        _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(u + i), pv, _CMP_LT_OQ));
    for (int lane = 0; lane < 4; ++lane) {
      flags[i + lane] = static_cast<std::uint8_t>((mask >> lane) & 1);
    }
    count += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) {
    const std::uint8_t f = u[i] < p ? 1 : 0;
    flags[i] = f;
    count += f;
  }
  return count;
}

void unit_doubles_avx2(const std::uint64_t* words, std::size_t n,
                       double* out) {
  const __m256i exp_one = _mm256_set1_epi64x(0x3FF0000000000000ll);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i w =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    const __m256i bits = _mm256_or_si256(_mm256_srli_epi64(w, 12), exp_one);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_castsi256_pd(bits), one));
  }
  for (; i < n; ++i) out[i] = unit_double_from_bits(words[i]);
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", radius_hits_avx2, bernoulli_mask_avx2,
                                 unit_doubles_avx2};
  return &table;
}

}  // namespace bootperc::kernels

#else

namespace bootperc::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace bootperc::kernels

#endif
