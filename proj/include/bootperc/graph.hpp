#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "bootperc/pointset.hpp"

namespace bootperc {

// Compressed sparse rows; neighbor lists sorted ascending so every traversal
// is reproducible.
struct AdjacencyGraph {
  std::vector<std::int64_t> offsets;    // node_count()+1 entries
  std::vector<std::int32_t> neighbors;

  std::size_t node_count() const {
    return offsets.empty() ? 0 : offsets.size() - 1;
  }
  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(neighbors.size() / 2);
  }
  std::int64_t degree(std::int32_t v) const {
    return offsets[v + 1] - offsets[v];
  }
  std::span<const std::int32_t> row(std::int32_t v) const {
    return {neighbors.data() + offsets[v],
            static_cast<std::size_t>(degree(v))};
  }
};

struct GeometricGraph {
  PointSet points;
  double radius = 0.0;
  std::optional<double> a_param;  // density parameter when radius = radius_for(a, n)
  AdjacencyGraph adj;
};

// r = sqrt(a ln n / pi), in the sqrt(n)-side square's units.
double radius_for(double a, double n);

// Same radius rescaled to the unit square (divided by sqrt(n)).
double radius_for_unit_square(double a, double n);

inline constexpr double kLambdaC = 1.44;  // giant-component constant

struct CriticalRadii {
  double r_c;  // giant component: sqrt(lambda_c / n)
  double r_t;  // connectivity: sqrt(ln n / (pi n))
};
CriticalRadii critical_radii(double n);

// Edges between all pairs at Euclidean distance <= radius (closed ball).
// Grid-bucketed: expected O(|V| * avg_degree), not O(|V|^2).
GeometricGraph build_graph(PointSet points, double radius,
                           std::optional<double> a_param = std::nullopt);

struct ConnectivityReport {
  bool is_connected = true;
  std::vector<std::int64_t> component_sizes;  // sorted descending
};
ConnectivityReport connectivity(const AdjacencyGraph& g);

// Header `u,v`, one line per undirected edge with u < v, ascending.
void write_edges_csv(const AdjacencyGraph& g, std::ostream& os);

}  // namespace bootperc
