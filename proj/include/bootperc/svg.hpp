#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bootperc {

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

// Dashed vertical reference line.
struct ChartMarker {
  double x = 0.0;
  std::string label;
};

struct ChartOptions {
  std::string title;
  std::string x_label = "p";
  std::string y_label = "full_fraction";
  bool log_x = true;
  int width = 840;
  int height = 520;
};

// Single self-contained SVG document (no external css/fonts/scripts), one
// polyline per series, y fixed to [0,1]. With log_x every x (points and
// markers) must be > 0.
std::string render_chart(const std::vector<ChartSeries>& series,
                         const std::vector<ChartMarker>& markers,
                         const ChartOptions& options);

}  // namespace bootperc
