// aarch64 NEON variants (baseline on that target, so no runtime feature
// probe needed). Collapses to a nullptr table elsewhere.
#include "bootperc/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace bootperc::kernels {
namespace {

std::size_t radius_hits_neon(const double* xs, const double* ys,
                             std::size_t n, double qx, double qy, double r2,
                             std::int32_t* out) {
  const float64x2_t qxv = vdupq_n_f64(qx);
  const float64x2_t qyv = vdupq_n_f64(qy);
  const float64x2_t r2v = vdupq_n_f64(r2);
  std::size_t hits = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), qxv);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), qyv);
    const float64x2_t d2 = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
    const uint64x2_t m = vcleq_f64(d2, r2v);
    if (vgetq_lane_u64(m, 0)) out[hits++] = static_cast<std::int32_t>(i);
    if (vgetq_lane_u64(m, 1)) out[hits++] = static_cast<std::int32_t>(i + 1);
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    if (dx * dx + dy * dy <= r2) out[hits++] = static_cast<std::int32_t>(i);
  }
  return hits;
}

std::size_t bernoulli_mask_neon(const double* u, std::size_t n, double p,
                                std::uint8_t* flags) {
  const float64x2_t pv = vdupq_n_f64(p);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t m = vcltq_f64(vld1q_f64(u + i), pv);
    const std::uint8_t f0 = static_cast<std::uint8_t>(vgetq_lane_u64(m, 0) & 1);
    const std::uint8_t f1 = static_cast<std::uint8_t>(vgetq_lane_u64(m, 1) & 1);
    flags[i] = f0;
    flags[i + 1] = f1;
    count += f0 + f1;
  }
  for (; i < n; ++i) {
    const std::uint8_t f = u[i] < p ? 1 : 0;
    flags[i] = f;
    count += f;
  }
  return count;
}

void unit_doubles_neon(const std::uint64_t* words, std::size_t n,
                       double* out) {
  const uint64x2_t exp_one = vdupq_n_u64(0x3FF0000000000000ull);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t bits =
        vorrq_u64(vshrq_n_u64(vld1q_u64(words + i), 12), exp_one);
    vst1q_f64(out + i, vsubq_f64(vreinterpretq_f64_u64(bits), one));
  }
  for (; i < n; ++i) out[i] = unit_double_from_bits(words[i]);
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{"neon", radius_hits_neon, bernoulli_mask_neon,
                                 unit_doubles_neon};
  return &table;
}

}  // namespace bootperc::kernels

#else

namespace bootperc::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace bootperc::kernels

#endif
