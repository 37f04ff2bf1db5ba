#include "bootperc/kernels.hpp"

namespace bootperc::kernels {
namespace {

std::size_t radius_hits_scalar(const double* xs, const double* ys,
                               std::size_t n, double qx, double qy, double r2,
                               std::int32_t* out) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    const double d2 = dx * dx + dy * dy;
    if (d2 <= r2) out[hits++] = static_cast<std::int32_t>(i);
  }
  return hits;
}

std::size_t bernoulli_mask_scalar(const double* u, std::size_t n, double p,
                                  std::uint8_t* flags) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t f = u[i] < p ? 1 : 0;
    flags[i] = f;
    count += f;
  }
  return count;
}

void unit_doubles_scalar(const std::uint64_t* words, std::size_t n,
                         double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = unit_double_from_bits(words[i]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", radius_hits_scalar,
                                 bernoulli_mask_scalar, unit_doubles_scalar};
  return table;
}

}  // namespace bootperc::kernels
