#include "bootperc/rng.hpp"

#include <cmath>

#include "bootperc/errors.hpp"

namespace bootperc {

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t i, std::uint64_t j) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : tag) h = (h ^ c) * 0x100000001b3ull;

  std::uint64_t state = master;
  std::uint64_t out = splitmix64(state);
  state ^= h;
  out ^= splitmix64(state);
  state ^= i;
  out ^= splitmix64(state);
  state ^= j;
  out ^= splitmix64(state);
  return out;
}

std::uint64_t poisson_draw(double lambda, Xoshiro256pp& rng) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw param_error("poisson_draw: lambda must be finite and >= 0");

  std::uint64_t total = 0;
  double remaining = lambda;
  while (remaining > 0.0) {
    const double chunk = remaining > 256.0 ? 256.0 : remaining;
    remaining -= chunk;
    const double limit = std::exp(-chunk);
    std::uint64_t k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= rng.next_unit();
    } while (prod > limit);
    total += k - 1;
  }
  return total;
}

}  // namespace bootperc
