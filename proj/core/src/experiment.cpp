#include "mcs/experiment.hpp"

#include <chrono>

#include "mcs/error.hpp"
#include "mcs/kernel.hpp"
#include "mcs/oracle.hpp"

namespace mcs::experiment {

void ExperimentConfig::validate() const {
  if (trials == 0) throw ParameterError("trials must be at least 1");
  if (n == 0) throw ParameterError("n must be at least 1");
  if (densities.empty()) throw ParameterError("at least one density is required");
  for (double p : densities) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("density " + std::to_string(p) + " outside [0,1]");
  }
  if (kind == Kind::Table2 && methods.empty()) throw ParameterError("at least one method is required");
  solve.validate();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t p_index, std::size_t trial_index) {
  return splitmix64(splitmix64(splitmix64(master) ^ p_index) ^ trial_index);
}

std::vector<ResultRow> run_table2(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ResultRow> rows;
  for (std::size_t pi = 0; pi < cfg.densities.size(); ++pi) {
    const double p = cfg.densities[pi];
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::uint64_t seed = trial_seed(cfg.seed, pi, t);
      const Graph g1 = erdos_renyi(cfg.n, p, splitmix64(seed ^ 1));
      const Graph g2 = erdos_renyi(cfg.n, p, splitmix64(seed ^ 2));
      for (Method m : cfg.methods) {
        auto solve = cfg.solve;
        solve.method = m;
        solve.seed = seed;
        const MCSResult r = pipeline::solve_mcs(g1, g2, solve);
        if (cfg.on_result) cfg.on_result(g1, g2, r);
        ResultRow row;
        row.p = p;
        row.seed = seed;
        row.method = to_string(m);
        row.size = r.size();
        row.iterations = r.stats.iterations;
        row.kernel_size = r.stats.kernel_size;
        if (cfg.record_wall_time) row.wall_ms = r.stats.wall_ms;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<ResultRow> run_kernel_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ResultRow> rows;
  for (std::size_t pi = 0; pi < cfg.densities.size(); ++pi) {
    const double p = cfg.densities[pi];
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::uint64_t seed = trial_seed(cfg.seed, pi, t);
      const Graph g = erdos_renyi(cfg.n, p, splitmix64(seed ^ 1));
      const Graph h = permuted_copy(g, splitmix64(seed ^ 2)).first;
      const auto assoc = association_graph(g, h, cfg.n * cfg.n);
      const Graph co = complement(assoc.graph);
      const auto start = std::chrono::steady_clock::now();
      const auto reduction = kernel::reduce_full(co, true);
      const double ms = elapsed_ms(start);

      // Independent in the complement means a clique of the association graph.
      std::vector<std::pair<Vertex, Vertex>> mapping;
      for (Vertex v : reduction.mis) mapping.push_back(assoc.label(v));
      if (!oracle::verify_common_subgraph(g, h, mapping)) {
        throw ValidationError("reduction of trial seed " + std::to_string(seed) + " is not a common subgraph");
      }
      if (cfg.on_result) {
        MCSResult r;
        r.mapping = mapping;
        r.method = Method::KernelRD;
        r.seed = seed;
        cfg.on_result(g, h, r);
      }

      const auto& c = reduction.counts;
      ResultRow row;
      row.p = p;
      row.seed = seed;
      row.method = "reduce";
      row.size = reduction.mis.size();
      row.accuracy = static_cast<double>(row.size) / static_cast<double>(cfg.n);
      row.iterations = c.degree_one + c.degree_two + c.inexact + c.fold + c.twin + c.unconfined + c.diamond;
      row.kernel_size = reduction.exact_kernel_order;
      if (cfg.record_wall_time) row.wall_ms = ms;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace mcs::experiment
