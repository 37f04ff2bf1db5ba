#include "bootperc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "bootperc/errors.hpp"
#include "bootperc/kernels.hpp"

namespace bootperc {

double radius_for(double a, double n) {
  if (!(a > 0.0)) throw param_error("radius_for: a must be > 0");
  if (!(n >= 2.0)) throw param_error("radius_for: n must be >= 2");
  return std::sqrt(a * std::log(n) / std::numbers::pi);
}

double radius_for_unit_square(double a, double n) {
  return radius_for(a, n) / std::sqrt(n);
}

CriticalRadii critical_radii(double n) {
  if (!(n >= 2.0)) throw param_error("critical_radii: n must be >= 2");
  return {std::sqrt(kLambdaC / n), std::sqrt(std::log(n) / (std::numbers::pi * n))};
}

namespace {

// Points regrouped bucket by bucket so each bucket is one contiguous slab
// for the radius kernel.
struct BucketIndex {
  int nb = 1;        // buckets per axis
  double width = 0;  // >= radius by construction
  std::vector<std::int64_t> starts;  // nb*nb + 1
  std::vector<std::int32_t> order;   // point ids, ascending within a bucket
  std::vector<double> xs;            // coordinates in `order` order
  std::vector<double> ys;

  int bucket_of(double coord) const {
    int b = static_cast<int>(coord / width);
    if (b < 0) b = 0;
    if (b >= nb) b = nb - 1;
    return b;
  }
};

BucketIndex build_buckets(const PointSet& ps, double radius) {
  BucketIndex idx;
  idx.nb = std::max(1, static_cast<int>(std::floor(ps.side / radius)));
  idx.width = ps.side / idx.nb;

  const std::size_t nv = ps.size();
  const std::size_t nbuckets =
      static_cast<std::size_t>(idx.nb) * static_cast<std::size_t>(idx.nb);
  std::vector<std::int64_t> counts(nbuckets, 0);
  std::vector<std::int32_t> bucket_of(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const int bx = idx.bucket_of(ps.xs[i]);
    const int by = idx.bucket_of(ps.ys[i]);
    bucket_of[i] = static_cast<std::int32_t>(by * idx.nb + bx);
    ++counts[bucket_of[i]];
  }

  idx.starts.assign(nbuckets + 1, 0);
  for (std::size_t b = 0; b < nbuckets; ++b)
    idx.starts[b + 1] = idx.starts[b] + counts[b];

  idx.order.resize(nv);
  idx.xs.resize(nv);
  idx.ys.resize(nv);
  std::vector<std::int64_t> cursor(idx.starts.begin(), idx.starts.end() - 1);
  for (std::size_t i = 0; i < nv; ++i) {
    const std::int64_t at = cursor[bucket_of[i]]++;
    idx.order[at] = static_cast<std::int32_t>(i);
    idx.xs[at] = ps.xs[i];
    idx.ys[at] = ps.ys[i];
  }
  return idx;
}

}  // namespace

GeometricGraph build_graph(PointSet points, double radius,
                           std::optional<double> a_param) {
  if (!(radius > 0.0)) throw param_error("build_graph: radius must be > 0");
  if (points.size() >
      static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw param_error("build_graph: too many points for 32-bit node ids");

  GeometricGraph g;
  g.radius = radius;
  g.a_param = a_param;

  const std::size_t nv = points.size();
  g.adj.offsets.assign(nv + 1, 0);
  if (nv == 0) {
    g.points = std::move(points);
    return g;
  }

  const BucketIndex idx = build_buckets(points, radius);
  const double r2 = radius * radius;
  const auto& kt = kernels::active();

  std::int64_t max_bucket = 0;
  for (std::size_t b = 0; b + 1 < idx.starts.size(); ++b)
    max_bucket = std::max(max_bucket, idx.starts[b + 1] - idx.starts[b]);
  std::vector<std::int32_t> hits(static_cast<std::size_t>(max_bucket));
  std::vector<std::int32_t> row;

  g.adj.neighbors.reserve(nv * 4);
  for (std::size_t v = 0; v < nv; ++v) {
    const double qx = points.xs[v];
    const double qy = points.ys[v];
    const int bx = idx.bucket_of(qx);
    const int by = idx.bucket_of(qy);

    row.clear();
    for (int iy = std::max(0, by - 1); iy <= std::min(idx.nb - 1, by + 1);
         ++iy) {
      for (int ix = std::max(0, bx - 1); ix <= std::min(idx.nb - 1, bx + 1);
           ++ix) {
        const std::int64_t s = idx.starts[iy * idx.nb + ix];
        const std::int64_t len = idx.starts[iy * idx.nb + ix + 1] - s;
        if (len == 0) continue;
        const std::size_t found =
            kt.radius_hits(idx.xs.data() + s, idx.ys.data() + s,
                           static_cast<std::size_t>(len), qx, qy, r2,
                           hits.data());
        for (std::size_t h = 0; h < found; ++h) {
          const std::int32_t id = idx.order[s + hits[h]];
          if (id != static_cast<std::int32_t>(v)) row.push_back(id);
        }
      }
    }
    std::sort(row.begin(), row.end());
    g.adj.offsets[v + 1] = g.adj.offsets[v] + static_cast<std::int64_t>(row.size());
    g.adj.neighbors.insert(g.adj.neighbors.end(), row.begin(), row.end());
  }

  g.points = std::move(points);
  return g;
}

ConnectivityReport connectivity(const AdjacencyGraph& g) {
  ConnectivityReport rep;
  const std::size_t nv = g.node_count();
  std::vector<std::uint8_t> seen(nv, 0);
  std::vector<std::int32_t> stack;
  for (std::size_t root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    std::int64_t size = 0;
    seen[root] = 1;
    stack.push_back(static_cast<std::int32_t>(root));
    while (!stack.empty()) {
      const std::int32_t v = stack.back();
      stack.pop_back();
      ++size;
      for (std::int32_t w : g.row(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    rep.component_sizes.push_back(size);
  }
  std::sort(rep.component_sizes.rbegin(), rep.component_sizes.rend());
  rep.is_connected = rep.component_sizes.size() <= 1;
  return rep;
}

void write_edges_csv(const AdjacencyGraph& g, std::ostream& os) {
  os << "u,v\n";
  const std::size_t nv = g.node_count();
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::int32_t v : g.row(static_cast<std::int32_t>(u))) {
      if (v > static_cast<std::int32_t>(u)) os << u << ',' << v << '\n';
    }
  }
}

}  // namespace bootperc
