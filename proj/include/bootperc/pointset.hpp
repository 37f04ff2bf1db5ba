#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace bootperc {

// PoissonIntensity1: N ~ Po(n) points, the unit-intensity Poisson process
// restricted to [0, sqrt(n)]^2. UniformN: exactly n points on the same square.
enum class SampleMode { PoissonIntensity1, UniformN };

std::string_view sample_mode_name(SampleMode mode);

struct PointSet {
  std::vector<double> xs;
  std::vector<double> ys;
  double side = 0.0;  // square is [0, side]^2, side = sqrt(n_param)
  SampleMode mode = SampleMode::PoissonIntensity1;
  std::uint64_t n_param = 0;
  std::uint64_t seed = 0;

  std::size_t size() const { return xs.size(); }
};

// Deterministic in (mode, n, seed): same inputs give the same byte-exact
// coordinates. Draw order is point count first (Poisson mode), then x,y per
// point.
PointSet sample_points(SampleMode mode, std::uint64_t n, std::uint64_t seed);

// Header `id,x,y`; coordinates with 17 significant digits.
void write_points_csv(const PointSet& ps, std::ostream& os);

}  // namespace bootperc
