#include <atomic>
#include <cstdlib>
#include <cstring>

#include "bootperc/kernels.hpp"

namespace bootperc::kernels {
namespace {

std::atomic<bool> g_force_scalar{false};

const KernelTable* detect() {
  const char* env = std::getenv("BOOTPERC_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
  if (const KernelTable* t = avx2_table(); t && __builtin_cpu_supports("avx2"))
    return t;
#endif
  if (const KernelTable* t = neon_table()) return t;
  return &scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable* detected = detect();
  if (g_force_scalar.load(std::memory_order_relaxed)) return scalar_table();
  return *detected;
}

void force_scalar(bool on) {
  g_force_scalar.store(on, std::memory_order_relaxed);
}

}  // namespace bootperc::kernels
