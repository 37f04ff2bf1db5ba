#include "bootperc/cells.hpp"

#include <cmath>

#include "bootperc/errors.hpp"

namespace bootperc {

CellGrid tile_cells(const PointSet& points, double radius) {
  if (!(radius > 0.0)) throw param_error("tile_cells: radius must be > 0");

  CellGrid grid;
  grid.side = points.side;
  grid.cell_side = radius / std::sqrt(5.0);
  grid.nx = std::max(1, static_cast<int>(std::ceil(points.side / grid.cell_side)));
  grid.ny = grid.nx;

  const std::size_t ncells = static_cast<std::size_t>(grid.cell_count());
  grid.counts.assign(ncells, 0);

  const std::size_t nv = points.size();
  std::vector<std::int32_t> cell_of(nv);
  auto clamp_axis = [&](double coord) {
    int c = static_cast<int>(coord / grid.cell_side);
    if (c < 0) c = 0;
    if (c >= grid.nx) c = grid.nx - 1;
    return c;
  };
  for (std::size_t i = 0; i < nv; ++i) {
    const int cx = clamp_axis(points.xs[i]);
    const int cy = clamp_axis(points.ys[i]);
    cell_of[i] = static_cast<std::int32_t>(cy * grid.nx + cx);
    ++grid.counts[cell_of[i]];
  }

  grid.starts.assign(ncells + 1, 0);
  for (std::size_t c = 0; c < ncells; ++c)
    grid.starts[c + 1] = grid.starts[c] + grid.counts[c];
  grid.order.resize(nv);
  std::vector<std::int64_t> cursor(grid.starts.begin(), grid.starts.end() - 1);
  for (std::size_t i = 0; i < nv; ++i)
    grid.order[cursor[cell_of[i]]++] = static_cast<std::int32_t>(i);

  return grid;
}

CellGrid tile_cells(const GeometricGraph& g) {
  if (!g.a_param)
    throw param_error("tile_cells: graph was not built with a density parameter");
  return tile_cells(g.points, g.radius);
}

bool min_cell_count_predicate(const CellGrid& cells, double threshold,
                              bool include_clipped) {
  if (threshold < 0.0)
    throw param_error("min_cell_count_predicate: threshold must be >= 0");
  for (int iy = 0; iy < cells.ny; ++iy) {
    for (int ix = 0; ix < cells.nx; ++ix) {
      if (!include_clipped && !cells.cell_is_full(ix, iy)) continue;
      if (static_cast<double>(cells.counts[iy * cells.nx + ix]) < threshold)
        return false;
    }
  }
  return true;
}

}  // namespace bootperc
