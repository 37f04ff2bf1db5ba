#include "bootperc/pointset.hpp"

#include <cmath>
#include <ostream>

#include "bootperc/errors.hpp"
#include "bootperc/format.hpp"
#include "bootperc/kernels.hpp"
#include "bootperc/rng.hpp"

namespace bootperc {

std::string_view sample_mode_name(SampleMode mode) {
  return mode == SampleMode::PoissonIntensity1 ? "poisson" : "uniform";
}

PointSet sample_points(SampleMode mode, std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw param_error("sample_points: n must be >= 1");

  PointSet ps;
  ps.side = std::sqrt(static_cast<double>(n));
  ps.mode = mode;
  ps.n_param = n;
  ps.seed = seed;

  Xoshiro256pp rng(seed);
  const std::uint64_t count = mode == SampleMode::PoissonIntensity1
                                  ? poisson_draw(static_cast<double>(n), rng)
                                  : n;

  // Bulk-convert raw words through the unit_doubles kernel; interleaved as
  // (x0, y0, x1, y1, ...) so the draw order is stable.
  std::vector<std::uint64_t> words(2 * count);
  rng.fill(words.data(), words.size());
  std::vector<double> units(2 * count);
  kernels::active().unit_doubles(words.data(), words.size(), units.data());

  ps.xs.resize(count);
  ps.ys.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    ps.xs[i] = units[2 * i] * ps.side;
    ps.ys[i] = units[2 * i + 1] * ps.side;
  }
  return ps;
}

void write_points_csv(const PointSet& ps, std::ostream& os) {
  os << "id,x,y\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    os << i << ',' << fmt_sig17(ps.xs[i]) << ',' << fmt_sig17(ps.ys[i])
       << '\n';
  }
}

}  // namespace bootperc
