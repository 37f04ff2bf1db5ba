// Command-line front end: graph generation, analytic bounds, the gamma=1/20
// reference table, Monte Carlo sweeps, lattice runs and tiling diagnostics.
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bootperc/analysis.hpp"
#include "bootperc/cells.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/io.hpp"
#include "bootperc/percolation.hpp"
#include "bootperc/pointset.hpp"
#include "bootperc/rng.hpp"
#include "bootperc/sweep.hpp"

namespace {

using namespace bootperc;

SampleMode parse_sample_mode(const std::string& name) {
  if (name == "poisson") return SampleMode::PoissonIntensity1;
  if (name == "uniform") return SampleMode::UniformN;
  throw param_error("mode must be 'poisson' or 'uniform'");
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> values;
  std::size_t at = 0;
  while (at <= text.size()) {
    const std::size_t comma = text.find(',', at);
    const std::string item =
        text.substr(at, comma == std::string::npos ? comma : comma - at);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw param_error("bad p value '" + item + "' in --p list");
    }
    if (comma == std::string::npos) break;
    at = comma + 1;
  }
  return values;
}

std::vector<double> parse_p_grid(const std::string& text) {
  // lo:hi:count, geometric spacing
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw param_error("--p-grid expects lo:hi:count");
  try {
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const int count = std::stoi(text.substr(c2 + 1));
    return geometric_grid(lo, hi, count);
  } catch (const param_error&) {
    throw;
  } catch (const std::exception&) {
    throw param_error("--p-grid expects numeric lo:hi:count");
  }
}

// Writes through `emit` to path when given, else to stdout.
template <typename Fn>
void write_to(const std::string& path, Fn emit) {
  if (path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream os = open_output(path);
  emit(os);
  finish_output(os, path);
}

struct GenArgs {
  std::string mode = "poisson";
  std::uint64_t n = 1000;
  std::uint64_t seed = 1;
  double a = 0.0;
  double radius = 0.0;
  std::string points_out;
  std::string edges_out;
};

void run_gen(const GenArgs& args) {
  const SampleMode mode = parse_sample_mode(args.mode);
  if (args.a != 0.0 && args.radius != 0.0)
    throw param_error("gen: give --a or --radius, not both");

  const PointSet points = sample_points(mode, args.n, args.seed);

  double radius = args.radius;
  std::optional<double> a_param;
  if (args.a != 0.0) {
    radius = radius_for(args.a, static_cast<double>(args.n));
    a_param = args.a;
  }

  if (!args.edges_out.empty()) {
    if (radius == 0.0)
      throw param_error("gen: --edges-out needs --a or --radius");
    const GeometricGraph g = build_graph(points, radius, a_param);
    write_to(args.edges_out, [&](std::ostream& os) { write_edges_csv(g.adj, os); });
  }
  if (!args.points_out.empty() || args.edges_out.empty()) {
    write_to(args.points_out,
             [&](std::ostream& os) { write_points_csv(points, os); });
  }
}

struct BoundsArgs {
  double a = 0.0;
  double gamma = 0.0;
  std::string out;
};

void run_bounds(const BoundsArgs& args) {
  const ThresholdBounds b = threshold_bounds(args.a, args.gamma);
  write_to(args.out, [&](std::ostream& os) {
    write_bounds_header(os);
    write_bounds_row(os, b);
  });
}

struct SweepArgs {
  std::uint64_t n = 15000;
  double a = 30.0;
  double gamma = 0.01;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string mode = "fresh";
  std::string sample = "poisson";
  std::string p_grid;
  std::string p_list;
  int workers = 1;
  bool quick = false;
  bool linear_x = false;
  std::string out;
  std::string trials_out;
  std::string svg_out;
  bool n_given = false;
  bool trials_given = false;
};

void run_sweep_cmd(const SweepArgs& args) {
  SweepSpec spec;
  spec.n = args.n;
  spec.a = args.a;
  spec.gamma = args.gamma;
  spec.trials = args.trials;
  spec.master_seed = args.seed;
  spec.workers = args.workers;
  spec.sample_mode = parse_sample_mode(args.sample);
  if (args.mode == "fresh")
    spec.mode = GraphMode::FreshGraphPerTrial;
  else if (args.mode == "fixed")
    spec.mode = GraphMode::FixedGraph;
  else
    throw param_error("sweep: --mode must be 'fresh' or 'fixed'");

  if (args.quick) {
    if (!args.n_given) spec.n = 4000;
    if (!args.trials_given) spec.trials = 20;
  }

  if (!args.p_grid.empty() && !args.p_list.empty())
    throw param_error("sweep: give --p-grid or --p, not both");
  if (!args.p_grid.empty())
    spec.p_values = parse_p_grid(args.p_grid);
  else if (!args.p_list.empty())
    spec.p_values = parse_p_list(args.p_list);
  else
    spec.p_values = default_p_grid(spec.a, spec.gamma);

  const bool keep_trials = !args.trials_out.empty();
  const SweepResult result = run_sweep(spec, keep_trials);

  write_to(args.out,
           [&](std::ostream& os) { write_sweep_csv(spec, result, os); });
  if (keep_trials) {
    write_to(args.trials_out, [&](std::ostream& os) {
      write_trial_csv(result, spec.p_values, os);
    });
  }
  if (!args.svg_out.empty()) {
    const ThresholdBounds b = threshold_bounds(spec.a, spec.gamma);
    emit_chart(spec, result, b, !args.linear_x, args.svg_out);
  }
}

struct LatticeArgs {
  int N = 100;
  double p = 0.1;
  int trials = 1;
  std::uint64_t seed = 1;
  std::string out;
};

void run_lattice_cmd(const LatticeArgs& args) {
  if (args.trials < 1) throw param_error("lattice: --trials must be >= 1");
  write_to(args.out, [&](std::ostream& os) {
    write_outcome_header(os);
    for (int t = 0; t < args.trials; ++t) {
      const std::uint64_t seed =
          derive_seed(args.seed, "lattice", static_cast<std::uint64_t>(t));
      const PercolationOutcome outcome =
          run_lattice_theta1(args.N, args.p, seed);
      write_outcome_row(os, seed, args.p, 1, outcome);
    }
  });
}

struct TilingArgs {
  std::uint64_t n = 15000;
  double a = 30.0;
  double gamma = 0.01;
  double p = 0.004;
  int seeds = 100;
  std::uint64_t seed = 1;
  std::string out;
};

void run_tiling_cmd(const TilingArgs& args) {
  const TilingReport report = verify_tiling_claims(args.n, args.a, args.gamma,
                                                   args.p, args.seeds, args.seed);
  write_to(args.out,
           [&](std::ostream& os) { write_tiling_csv(report, os); });
}

void print_usage(std::ostream& os) {
  os << "usage: bootperc <command> [options]\n"
        "\n"
        "commands:\n"
        "  gen      sample points and emit point/edge CSVs\n"
        "  bounds   analytic activation-probability bounds\n"
        "  table1   gamma=1/20 bounds table with reference comparison\n"
        "  sweep    Monte Carlo sweep of full-activation frequency over p\n"
        "  lattice  theta=1 runs on the (N+1)^2 grid graph\n"
        "  tiling   cell-occupancy and cell-seeding frequencies vs "
        "predictions\n"
        "\n"
        "run 'bootperc <command> --help' for command options; every command\n"
        "accepts --config <file> with flat key=value lines mirroring its\n"
        "long options (flags override the file; quote values containing\n"
        "commas).\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cmd = argc > 1 ? argv[1] : "";
  if (cmd.empty()) {
    print_usage(std::cerr);
    return 2;
  }
  if (cmd == "--help" || cmd == "-h" || cmd == "help") {
    print_usage(std::cout);
    return 0;
  }

  // Each command is built as its own top-level app: config files only feed
  // options of the app that owns set_config, so a shared parent with
  // subcommands would leave flat key=value files inert.
  CLI::App app{"", "bootperc " + cmd};
  app.set_config("--config", "",
                 "flat key=value file mirroring the long options; flags "
                 "override it");

  GenArgs gen;
  BoundsArgs bounds;
  std::string table1_out;
  SweepArgs sweep;
  CLI::Option* sweep_n = nullptr;
  CLI::Option* sweep_trials = nullptr;
  LatticeArgs lattice;
  TilingArgs tiling;
  std::function<void()> run;

  if (cmd == "gen") {
    app.description("sample points and emit point/edge CSVs");
    app.add_option("--mode", gen.mode, "poisson (intensity-1) or uniform");
    app.add_option("--n", gen.n, "intensity / point count")->required();
    app.add_option("--seed", gen.seed, "generator seed");
    app.add_option("--a", gen.a, "density parameter; radius = sqrt(a ln n / pi)");
    app.add_option("--radius", gen.radius, "explicit connection radius");
    app.add_option("--points-out", gen.points_out, "points CSV path (default stdout)");
    app.add_option("--edges-out", gen.edges_out, "edge CSV path");
    run = [&] { run_gen(gen); };
  } else if (cmd == "bounds") {
    app.description("analytic activation-probability bounds");
    app.add_option("--a", bounds.a, "density parameter, > 1")->required();
    app.add_option("--gamma", bounds.gamma, "threshold fraction, in (0, 1/(5*pi))")
        ->required();
    app.add_option("--out", bounds.out, "output CSV path (default stdout)");
    run = [&] { run_bounds(bounds); };
  } else if (cmd == "table1") {
    app.description("gamma=1/20 bounds table with reference comparison");
    app.add_option("--out", table1_out, "output CSV path (default stdout)");
    run = [&] {
      write_to(table1_out, [](std::ostream& os) { write_table1_csv(os); });
    };
  } else if (cmd == "sweep") {
    app.description("Monte Carlo sweep of full-activation frequency over p");
    sweep_n = app.add_option("--n", sweep.n, "point-process intensity");
    app.add_option("--a", sweep.a, "density parameter");
    app.add_option("--gamma", sweep.gamma, "threshold fraction");
    sweep_trials = app.add_option("--trials", sweep.trials, "runs per p value");
    app.add_option("--seed", sweep.seed, "master seed");
    app.add_option("--mode", sweep.mode, "fresh (graph per trial) or fixed");
    app.add_option("--sample", sweep.sample, "poisson or uniform point sampling");
    app.add_option("--p-grid", sweep.p_grid, "geometric grid lo:hi:count");
    app.add_option("--p", sweep.p_list, "explicit comma-separated p list");
    app.add_option("--workers", sweep.workers, "worker threads");
    app.add_flag("--quick", sweep.quick, "CI preset: n=4000, trials=20");
    app.add_flag("--linear-x", sweep.linear_x, "linear x axis in the chart");
    app.add_option("--out", sweep.out, "sweep CSV path (default stdout)");
    app.add_option("--trials-out", sweep.trials_out, "per-trial outcome CSV path");
    app.add_option("--svg", sweep.svg_out, "chart SVG path");
    run = [&] {
      sweep.n_given = sweep_n->count() > 0;
      sweep.trials_given = sweep_trials->count() > 0;
      run_sweep_cmd(sweep);
    };
  } else if (cmd == "lattice") {
    app.description("theta=1 runs on the (N+1)^2 grid graph");
    app.add_option("--N", lattice.N, "lattice size parameter")->required();
    app.add_option("--p", lattice.p, "initial activation probability")
        ->required();
    app.add_option("--trials", lattice.trials, "number of seeded runs");
    app.add_option("--seed", lattice.seed, "master seed");
    app.add_option("--out", lattice.out, "outcome CSV path (default stdout)");
    run = [&] { run_lattice_cmd(lattice); };
  } else if (cmd == "tiling") {
    app.description("cell-occupancy and cell-seeding frequencies vs predictions");
    app.add_option("--n", tiling.n, "point-process intensity");
    app.add_option("--a", tiling.a, "density parameter");
    app.add_option("--gamma", tiling.gamma, "threshold fraction");
    app.add_option("--p", tiling.p, "initial activation probability");
    app.add_option("--seeds", tiling.seeds, "number of sampled instances");
    app.add_option("--seed", tiling.seed, "master seed");
    app.add_option("--out", tiling.out, "report CSV path (default stdout)");
    run = [&] { run_tiling_cmd(tiling); };
  } else {
    std::cerr << "unknown command '" << cmd << "'\n\n";
    print_usage(std::cerr);
    return 2;
  }

  try {
    app.parse(argc - 1, argv + 1);
    run();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    app.exit(e);
    return 3;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const bootperc::param_error& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const bootperc::io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
