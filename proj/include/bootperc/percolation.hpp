#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "bootperc/cells.hpp"
#include "bootperc/graph.hpp"

namespace bootperc {

struct BPParams {
  double p = 0.0;     // initial activation probability, in [0,1]
  int theta = 1;      // activation threshold, >= 1
  std::optional<std::int64_t> max_steps;  // defaults to 4*|V| when unset
};

struct Configuration {
  std::vector<std::uint8_t> active;
  std::vector<std::int32_t> activation_time;  // round index; 0 initial, -1 never
  std::vector<std::int32_t> pending_counts;   // active-neighbor counts (filled by closing)
  std::vector<double> uniforms;               // per-node draws, kept for coupling
  std::int64_t active_count = 0;
};

struct PercolationOutcome {
  bool fully_active = false;
  std::int64_t steps = 0;  // synchronous rounds until stable
  std::int64_t initial_active = 0;
  std::int64_t final_active = 0;
  double final_fraction = 0.0;
  bool truncated = false;  // max_steps exhausted before stability
};

// Bernoulli(p) product measure over node_count nodes; node v is active iff
// its uniform is < p. Uniforms are retained only when keep_uniforms is set.
Configuration init_configuration(std::size_t node_count, double p,
                                 std::uint64_t seed,
                                 bool keep_uniforms = false);

// Runs synchronous rounds in place until stable (or the step cap): an
// inactive node activates when at least theta of its neighbors are active.
// Event-driven: activations increment neighbor counters and nodes crossing
// theta join the next round's frontier, so total work is O(|E|).
PercolationOutcome close_configuration(const AdjacencyGraph& g,
                                       Configuration& config,
                                       const BPParams& params);

// init_configuration + close_configuration. The final configuration is the
// unique minimal superset of the initial set closed under the theta rule.
PercolationOutcome run(const AdjacencyGraph& g, const BPParams& params,
                       std::uint64_t seed,
                       Configuration* final_config = nullptr);

// One shared uniform draw per node; each params entry is run against the
// initial set {v : U_v < p}. All entries must share theta and have distinct
// p. Outcomes are ordered as params_list.
std::vector<PercolationOutcome> run_coupled(
    const AdjacencyGraph& g, std::span<const BPParams> params_list,
    std::uint64_t seed, std::vector<Configuration>* final_configs = nullptr);

// True iff no inactive node has >= theta active neighbors. Recounts from
// scratch, independently of pending_counts.
bool stability_check(const AdjacencyGraph& g, const Configuration& config,
                     int theta);

// True iff some cell holds >= theta active nodes of the (initial)
// configuration.
bool seeded_cell_predicate(const CellGrid& cells, const Configuration& config,
                           int theta);

// (N+1) x (N+1) grid graph with 4-neighbor adjacency.
AdjacencyGraph lattice_graph(int N);

// Bootstrap percolation with theta=1 on the lattice above.
PercolationOutcome run_lattice_theta1(
    int N, double p, std::uint64_t seed,
    std::optional<std::int64_t> step_cap = std::nullopt);

// CSV: seed,p,theta,initial_active,final_active,final_fraction,steps,
// fully_active,truncated (booleans as 0/1).
void write_outcome_header(std::ostream& os);
void write_outcome_row(std::ostream& os, std::uint64_t seed, double p,
                       int theta, const PercolationOutcome& outcome);

}  // namespace bootperc
