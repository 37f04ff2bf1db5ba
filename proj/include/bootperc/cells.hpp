#pragma once

#include <cstdint>
#include <vector>

#include "bootperc/graph.hpp"
#include "bootperc/pointset.hpp"

namespace bootperc {

// Square tiling of [0, side]^2 with cells of side radius/sqrt(5): any two
// points in the same cell or in side-sharing cells are within radius of each
// other. The last row/column may be clipped by the boundary.
struct CellGrid {
  double cell_side = 0.0;
  double side = 0.0;
  int nx = 0;  // cells per axis, ceil(side / cell_side)
  int ny = 0;

  std::vector<std::int32_t> counts;  // row-major, iy*nx + ix
  std::vector<std::int64_t> starts;  // nx*ny + 1; members grouped per cell
  std::vector<std::int32_t> order;   // point ids, ascending within a cell

  int cell_count() const { return nx * ny; }

  // Full-size (not clipped by the right/top boundary).
  bool cell_is_full(int ix, int iy) const {
    const double tol = cell_side * 1e-9;
    return (ix + 1) * cell_side <= side + tol &&
           (iy + 1) * cell_side <= side + tol;
  }
};

CellGrid tile_cells(const PointSet& points, double radius);

// Convenience for graphs built with a density parameter (a_param set).
CellGrid tile_cells(const GeometricGraph& g);

// True iff every full-size cell holds at least `threshold` points. Clipped
// boundary cells are skipped unless include_clipped is set.
bool min_cell_count_predicate(const CellGrid& cells, double threshold,
                              bool include_clipped = false);

}  // namespace bootperc
