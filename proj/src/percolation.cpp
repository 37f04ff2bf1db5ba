#include "bootperc/percolation.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

#include "bootperc/errors.hpp"
#include "bootperc/format.hpp"
#include "bootperc/kernels.hpp"
#include "bootperc/rng.hpp"

namespace bootperc {

namespace {

void validate_params(const BPParams& params) {
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw param_error("bp: p must be in [0,1]");
  if (params.theta < 1) throw param_error("bp: theta must be >= 1");
  if (params.max_steps && *params.max_steps < 0)
    throw param_error("bp: max_steps must be >= 0");
}

Configuration configuration_from_uniforms(const std::vector<double>& uniforms,
                                          double p) {
  Configuration config;
  const std::size_t nv = uniforms.size();
  config.active.resize(nv);
  config.active_count = static_cast<std::int64_t>(kernels::active().bernoulli_mask(
      uniforms.data(), nv, p, config.active.data()));
  config.activation_time.resize(nv);
  for (std::size_t v = 0; v < nv; ++v)
    config.activation_time[v] = config.active[v] ? 0 : -1;
  return config;
}

}  // namespace

Configuration init_configuration(std::size_t node_count, double p,
                                 std::uint64_t seed, bool keep_uniforms) {
  if (!(p >= 0.0 && p <= 1.0))
    throw param_error("init_configuration: p must be in [0,1]");

  Xoshiro256pp rng(seed);
  std::vector<std::uint64_t> words(node_count);
  rng.fill(words.data(), node_count);
  std::vector<double> uniforms(node_count);
  kernels::active().unit_doubles(words.data(), node_count, uniforms.data());

  Configuration config = configuration_from_uniforms(uniforms, p);
  if (keep_uniforms) config.uniforms = std::move(uniforms);
  return config;
}

PercolationOutcome close_configuration(const AdjacencyGraph& g,
                                       Configuration& config,
                                       const BPParams& params) {
  validate_params(params);
  const std::size_t nv = g.node_count();
  if (config.active.size() != nv)
    throw param_error("close_configuration: configuration does not match graph");

  const std::int64_t step_cap =
      params.max_steps ? *params.max_steps : 4 * static_cast<std::int64_t>(nv);
  const int theta = params.theta;

  PercolationOutcome out;
  out.initial_active = config.active_count;

  config.pending_counts.assign(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!config.active[v]) continue;
    for (std::int32_t w : g.row(static_cast<std::int32_t>(v)))
      ++config.pending_counts[w];
  }

  std::vector<std::int32_t> frontier;
  std::vector<std::int32_t> next;
  for (std::size_t v = 0; v < nv; ++v) {
    if (!config.active[v] && config.pending_counts[v] >= theta)
      frontier.push_back(static_cast<std::int32_t>(v));
  }

  while (!frontier.empty()) {
    if (out.steps >= step_cap) {
      out.truncated = true;
      break;
    }
    ++out.steps;
    const std::int32_t round = static_cast<std::int32_t>(out.steps);
    for (std::int32_t v : frontier) {
      config.active[v] = 1;
      config.activation_time[v] = round;
      ++config.active_count;
    }
    next.clear();
    for (std::int32_t v : frontier) {
      for (std::int32_t w : g.row(v)) {
        if (++config.pending_counts[w] == theta && !config.active[w])
          next.push_back(w);
      }
    }
    frontier.swap(next);
  }

  out.final_active = config.active_count;
  out.fully_active = config.active_count == static_cast<std::int64_t>(nv);
  out.final_fraction =
      nv == 0 ? 1.0
              : static_cast<double>(config.active_count) / static_cast<double>(nv);
  return out;
}

PercolationOutcome run(const AdjacencyGraph& g, const BPParams& params,
                       std::uint64_t seed, Configuration* final_config) {
  validate_params(params);
  if (g.node_count() == 0) throw param_error("run: graph is empty");

  Configuration config = init_configuration(g.node_count(), params.p, seed);
  PercolationOutcome out = close_configuration(g, config, params);
  if (final_config) *final_config = std::move(config);
  return out;
}

std::vector<PercolationOutcome> run_coupled(
    const AdjacencyGraph& g, std::span<const BPParams> params_list,
    std::uint64_t seed, std::vector<Configuration>* final_configs) {
  if (params_list.empty()) throw param_error("run_coupled: empty params list");
  if (g.node_count() == 0) throw param_error("run_coupled: graph is empty");
  for (const BPParams& params : params_list) {
    validate_params(params);
    if (params.theta != params_list.front().theta)
      throw param_error("run_coupled: all params must share theta");
  }
  for (std::size_t i = 0; i < params_list.size(); ++i) {
    for (std::size_t j = i + 1; j < params_list.size(); ++j) {
      if (params_list[i].p == params_list[j].p)
        throw param_error("run_coupled: p values must be distinct");
    }
  }

  const std::size_t nv = g.node_count();
  Xoshiro256pp rng(seed);
  std::vector<std::uint64_t> words(nv);
  rng.fill(words.data(), nv);
  std::vector<double> uniforms(nv);
  kernels::active().unit_doubles(words.data(), nv, uniforms.data());

  std::vector<PercolationOutcome> outcomes;
  outcomes.reserve(params_list.size());
  if (final_configs) {
    final_configs->clear();
    final_configs->reserve(params_list.size());
  }
  for (const BPParams& params : params_list) {
    Configuration config = configuration_from_uniforms(uniforms, params.p);
    outcomes.push_back(close_configuration(g, config, params));
    if (final_configs) final_configs->push_back(std::move(config));
  }
  return outcomes;
}

bool stability_check(const AdjacencyGraph& g, const Configuration& config,
                     int theta) {
  const std::size_t nv = g.node_count();
  if (config.active.size() != nv)
    throw param_error("stability_check: configuration does not match graph");
  for (std::size_t v = 0; v < nv; ++v) {
    if (config.active[v]) continue;
    int active_neighbors = 0;
    for (std::int32_t w : g.row(static_cast<std::int32_t>(v))) {
      if (config.active[w] && ++active_neighbors >= theta) return false;
    }
  }
  return true;
}

bool seeded_cell_predicate(const CellGrid& cells, const Configuration& config,
                           int theta) {
  if (theta < 1) throw param_error("seeded_cell_predicate: theta must be >= 1");
  const int ncells = cells.cell_count();
  for (int c = 0; c < ncells; ++c) {
    int active_members = 0;
    for (std::int64_t at = cells.starts[c]; at < cells.starts[c + 1]; ++at) {
      if (config.active[cells.order[at]] && ++active_members >= theta)
        return true;
    }
  }
  return false;
}

AdjacencyGraph lattice_graph(int N) {
  if (N < 1) throw param_error("lattice_graph: N must be >= 1");
  const int w = N + 1;
  const std::size_t nv = static_cast<std::size_t>(w) * w;

  AdjacencyGraph g;
  g.offsets.assign(nv + 1, 0);
  g.neighbors.reserve(nv * 4);
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t id = y * w + x;
      // appended in ascending id order
      if (y > 0) g.neighbors.push_back(id - w);
      if (x > 0) g.neighbors.push_back(id - 1);
      if (x < w - 1) g.neighbors.push_back(id + 1);
      if (y < w - 1) g.neighbors.push_back(id + w);
      g.offsets[id + 1] = static_cast<std::int64_t>(g.neighbors.size());
    }
  }
  return g;
}

PercolationOutcome run_lattice_theta1(int N, double p, std::uint64_t seed,
                                      std::optional<std::int64_t> step_cap) {
  // p=0 is allowed: the empty initial set is already stable.
  const AdjacencyGraph g = lattice_graph(N);
  return run(g, BPParams{p, 1, step_cap}, seed);
}

void write_outcome_header(std::ostream& os) {
  os << "seed,p,theta,initial_active,final_active,final_fraction,steps,"
        "fully_active,truncated\n";
}

void write_outcome_row(std::ostream& os, std::uint64_t seed, double p,
                       int theta, const PercolationOutcome& outcome) {
  os << seed << ',' << fmt_round_trip(p) << ',' << theta << ','
     << outcome.initial_active << ',' << outcome.final_active << ','
     << fmt_round_trip(outcome.final_fraction) << ',' << outcome.steps << ','
     << (outcome.fully_active ? 1 : 0) << ',' << (outcome.truncated ? 1 : 0)
     << '\n';
}

}  // namespace bootperc
