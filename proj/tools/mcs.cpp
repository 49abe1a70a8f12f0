// mcs: instance generation, solving, kernelization and batch experiments.
//
// Exit codes: 0 success, 2 parameter error, 3 I/O error, 4 validation failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcs/error.hpp"
#include "mcs/experiment.hpp"
#include "mcs/graph.hpp"
#include "mcs/kernel.hpp"
#include "mcs/oracle.hpp"
#include "mcs/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kParameter = 2, kIo = 3, kValidation = 4 };

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mcs::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw mcs::IoError("write to '" + path + "' failed");
}

std::vector<double> parse_densities(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw mcs::ParameterError("bad density '" + item + "'");
    out.push_back(p);
  }
  return out;
}

struct SolveArgs {
  std::string g1, g2, method = "aih", bound = "safe", json_out;
  std::uint64_t seed = 1;
  double tol = 1e-6, delta = 0.01, noise = 0.01;
  std::size_t max_iters = 1'000'000;
};

int run_solve(const SolveArgs& a) {
  mcs::pipeline::SolveConfig cfg;
  cfg.method = mcs::parse_method(a.method);
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  cfg.max_iters = a.max_iters;
  cfg.delta = a.delta;
  cfg.noise_sigma = a.noise;
  if (a.bound == "paper") {
    cfg.bound = mcs::annealing::BoundMode::QuarterRoot;
  } else if (a.bound != "safe") {
    throw mcs::ParameterError("unknown bound mode '" + a.bound + "'");
  }
  const auto g1 = mcs::read_dimacs_file(a.g1);
  const auto g2 = mcs::read_dimacs_file(a.g2);
  write_text(a.json_out, mcs::pipeline::to_json(mcs::pipeline::solve_mcs(g1, g2, cfg)));
  return kOk;
}

struct KernelizeArgs {
  std::string in, rules = "all", inexact = "off", out_kernel, out_trace;
};

int run_kernelize(const KernelizeArgs& a) {
  if (a.inexact != "on" && a.inexact != "off") throw mcs::ParameterError("--inexact must be on or off");
  const bool inexact = a.inexact == "on";
  const auto g = mcs::read_dimacs_file(a.in);
  mcs::kernel::Reduction r;
  if (a.rules == "all") {
    r = mcs::kernel::reduce_full(g, inexact);
  } else if (a.rules == "lineartime") {
    r = mcs::kernel::linear_time(g, inexact);
  } else {
    throw mcs::ParameterError("--rules must be all or lineartime");
  }
  if (!mcs::oracle::is_independent(g, r.mis)) throw mcs::ValidationError("lifted set is not independent");
  if (!a.out_kernel.empty()) mcs::write_dimacs_file(r.kernel.kernel, a.out_kernel);
  if (!a.out_trace.empty()) {
    std::ofstream out(a.out_trace, std::ios::binary);
    if (!out) throw mcs::IoError("cannot open '" + a.out_trace + "' for writing");
    mcs::kernel::write_trace(r.kernel, out);
  }
  const auto& c = r.counts;
  std::cout << "order " << g.order() << "\nkernel " << r.kernel.kernel.order() << "\nexact_kernel "
            << r.exact_kernel_order << "\nforced " << r.kernel.forced_count << "\nindependent_set " << r.mis.size()
            << "\nrules degree_one=" << c.degree_one << " degree_two=" << c.degree_two << " fold=" << c.fold
            << " twin=" << c.twin << " unconfined=" << c.unconfined << " diamond=" << c.diamond
            << " inexact=" << c.inexact << '\n';
  return kOk;
}

struct BenchArgs {
  std::string which;
  std::size_t n = 0, trials = 0;
  std::string densities, methods = "rd,aih", out;
  std::uint64_t seed = 1;
  bool no_timing = false;
  bool full_scale = false;
};

int run_bench(const BenchArgs& a) {
  mcs::experiment::ExperimentConfig cfg;
  cfg.seed = a.seed;
  cfg.record_wall_time = !a.no_timing;
  if (a.which == "table2") {
    cfg.kind = mcs::experiment::Kind::Table2;
    cfg.n = a.n ? a.n : 20;
    cfg.trials = a.trials ? a.trials : 30;
    cfg.densities = a.densities.empty() ? std::vector<double>{0.3, 0.5, 0.7} : parse_densities(a.densities);
    cfg.methods.clear();
    std::stringstream in(a.methods);
    std::string item;
    while (std::getline(in, item, ',')) cfg.methods.push_back(mcs::parse_method(item));
  } else {
    cfg.kind = mcs::experiment::Kind::Kernel;
    // Full scale: 15 densities x 100 instances of order 100 (hours on one core).
    const std::vector<double> sweep = a.full_scale ? std::vector<double>{0.01, 0.03, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                                                         0.6, 0.7, 0.8, 0.9, 0.95, 0.97, 0.99}
                                                   : std::vector<double>{0.01, 0.5, 0.99};
    cfg.n = a.n ? a.n : (a.full_scale ? 100 : 40);
    cfg.trials = a.trials ? a.trials : (a.full_scale ? 100 : 20);
    cfg.densities = a.densities.empty() ? sweep : parse_densities(a.densities);
  }
  const auto rows = cfg.kind == mcs::experiment::Kind::Table2 ? mcs::experiment::run_table2(cfg)
                                                               : mcs::experiment::run_kernel_experiment(cfg);
  if (a.out.empty() || a.out == "-") {
    mcs::experiment::emit_csv(rows, std::cout);
  } else {
    mcs::experiment::emit_csv(rows, a.out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum common subgraph via replicator dynamics, annealing and kernelization"};
  app.require_subcommand(1);

  std::size_t gen_n = 20;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write an Erdos-Renyi graph in DIMACS format");
  gen->add_option("--n", gen_n, "Number of vertices")->check(CLI::PositiveNumber);
  gen->add_option("--p", gen_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output path (stdout if omitted)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Maximum common subgraph of two DIMACS graphs");
  solve->add_option("--g1", solve_args.g1, "First graph")->required();
  solve->add_option("--g2", solve_args.g2, "Second graph")->required();
  solve->add_option("--method", solve_args.method, "rd|aih|kaih|krd|exact")->capture_default_str();
  solve->add_option("--seed", solve_args.seed, "Random seed")->capture_default_str();
  solve->add_option("--tol", solve_args.tol, "Convergence tolerance")->capture_default_str();
  solve->add_option("--max-iters", solve_args.max_iters, "Iteration cap per run")->capture_default_str();
  solve->add_option("--delta", solve_args.delta, "Annealing confidence parameter")->capture_default_str();
  solve->add_option("--noise", solve_args.noise, "Noise kick sigma")->capture_default_str();
  solve->add_option("--bound", solve_args.bound, "Clique bound: safe, or paper for the quarter-root formula")->capture_default_str();
  solve->add_option("--json-out", solve_args.json_out, "Result JSON path (stdout if omitted)");

  KernelizeArgs kernel_args;
  auto* kernelize = app.add_subcommand("kernelize", "Reduce a graph for maximum independent set");
  kernelize->add_option("--in", kernel_args.in, "Input graph")->required();
  kernelize->add_option("--rules", kernel_args.rules, "all|lineartime")->capture_default_str();
  kernelize->add_option("--inexact", kernel_args.inexact, "on|off")->capture_default_str();
  kernelize->add_option("--out-kernel", kernel_args.out_kernel, "Kernel graph (DIMACS)");
  kernelize->add_option("--out-trace", kernel_args.out_trace, "Reduction trace");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Batch experiments");
  bench->add_option("experiment", bench_args.which, "table2|kernel")
      ->required()
      ->check(CLI::IsMember({"table2", "kernel"}));
  bench->add_option("--n", bench_args.n, "Graph order (default 20 for table2, 40 for kernel)");
  bench->add_option("--trials", bench_args.trials, "Trials per density (default 30 / 20)");
  bench->add_option("--densities", bench_args.densities, "Comma-separated densities");
  bench->add_option("--methods", bench_args.methods, "Comma-separated methods (table2)")->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Master seed")->capture_default_str();
  bench->add_option("--out", bench_args.out, "CSV path (stdout if omitted)");
  bench->add_flag("--no-timing", bench_args.no_timing, "Leave wall_ms empty for reproducible output");
  bench->add_flag("--full-scale", bench_args.full_scale, "Kernel sweep at order 100, 15 densities, 100 trials");

  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "Render a CSV of results as an SVG line chart");
  plot->add_option("--in", plot_in, "CSV input")->required();
  plot->add_option("--out", plot_out, "SVG output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParameter;
  }

  try {
    if (*gen) {
      write_text(gen_out, mcs::write_dimacs(mcs::erdos_renyi(gen_n, gen_p, gen_seed)));
      return kOk;
    }
    if (*solve) return run_solve(solve_args);
    if (*kernelize) return run_kernelize(kernel_args);
    if (*bench) return run_bench(bench_args);
    if (*plot) {
      mcs::experiment::emit_plot(plot_in, plot_out);
      return kOk;
    }
  } catch (const mcs::ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << '\n';
    return kValidation;
  } catch (const mcs::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const mcs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParameter;
  }
  return kOk;
}
