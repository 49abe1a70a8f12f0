#include "mcs/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "json.hpp"

#include "mcs/dynamics.hpp"
#include "mcs/error.hpp"
#include "mcs/oracle.hpp"

namespace mcs {

std::string to_string(Method m) {
  switch (m) {
    case Method::RD: return "rd";
    case Method::AIH: return "aih";
    case Method::KernelAIH: return "kaih";
    case Method::KernelRD: return "krd";
    case Method::Exact: return "exact";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  for (auto m : {Method::RD, Method::AIH, Method::KernelAIH, Method::KernelRD, Method::Exact}) {
    if (to_string(m) == text) return m;
  }
  throw ParameterError("unknown method '" + text + "' (expected rd, aih, kaih, krd or exact)");
}

}  // namespace mcs

namespace mcs::pipeline {

void SolveConfig::validate() const {
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  if (max_iters == 0) throw ParameterError("max_iters must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
  if (!(noise_sigma > 0.0)) throw ParameterError("noise sigma must be positive");
}

CliqueKernel kernelize_for_clique(const AssociationGraph& assoc) {
  auto reduction = kernel::linear_time(complement(assoc.graph), false);
  CliqueKernel ck;
  ck.reduction = std::move(reduction.kernel);
  ck.clique_graph = complement(ck.reduction.kernel);
  ck.forced = std::move(reduction.mis);
  return ck;
}

VertexSet lift_clique(const CliqueKernel& ck, const VertexSet& kernel_clique) {
  return kernel::reconstruct_mis(ck.reduction, kernel_clique);
}

namespace {

std::string describe(const MCSResult& r) {
  std::string out = to_string(r.method) + " seed " + std::to_string(r.seed) + " mapping";
  for (const auto& [i, h] : r.mapping) out += " (" + std::to_string(i) + "," + std::to_string(h) + ")";
  return out;
}

annealing::AIHOptions aih_options(const SolveConfig& cfg) {
  annealing::AIHOptions opts;
  opts.tol = cfg.tol;
  opts.max_iters = cfg.max_iters;
  opts.delta = cfg.delta;
  opts.noise_sigma = cfg.noise_sigma;
  opts.bound = cfg.bound;
  return opts;
}

dynamics::TwoPhaseOptions rd_options(const SolveConfig& cfg) {
  dynamics::TwoPhaseOptions opts;
  opts.tol = cfg.tol;
  opts.max_iters = cfg.max_iters;
  opts.noise_sigma = cfg.noise_sigma;
  return opts;
}

dynamics::CliqueRun run_dynamics(const AssociationGraph& assoc, bool annealed, const SolveConfig& cfg) {
  if (annealed) return annealing::run_aih(assoc, cfg.seed, aih_options(cfg));
  return dynamics::two_phase_rd(assoc, cfg.seed, rd_options(cfg));
}

dynamics::CliqueRun run_dynamics(const Graph& g, std::size_t size_cap, bool annealed, const SolveConfig& cfg) {
  if (annealed) return annealing::run_aih(g, size_cap, cfg.seed, aih_options(cfg));
  return dynamics::two_phase_rd(g, cfg.seed, rd_options(cfg));
}

}  // namespace

MCSResult solve_mcs(const Graph& g1, const Graph& g2, const SolveConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto assoc = association_graph(g1, g2);
  const std::size_t cap = std::min(assoc.n1, assoc.n2);

  MCSResult result;
  result.method = cfg.method;
  result.seed = cfg.seed;
  VertexSet clique;
  switch (cfg.method) {
    case Method::RD:
    case Method::AIH: {
      auto run = run_dynamics(assoc, cfg.method == Method::AIH, cfg);
      clique = std::move(run.clique);
      result.stats.iterations = run.iterations;
      result.stats.stages = run.stages;
      break;
    }
    case Method::KernelRD:
    case Method::KernelAIH: {
      const auto ck = kernelize_for_clique(assoc);
      result.stats.kernel_size = ck.clique_graph.order();
      if (ck.clique_graph.order() == 0) {
        clique = ck.forced;
        break;
      }
      const std::size_t forced = ck.reduction.forced_count;
      const std::size_t kernel_cap = cap > forced ? cap - forced : 1;
      // With an empty trace the kernel is the association graph itself and
      // the factored products apply.
      const bool untouched = ck.reduction.trace.entries.empty();
      auto run = untouched ? run_dynamics(assoc, cfg.method == Method::KernelAIH, cfg)
                           : run_dynamics(ck.clique_graph, kernel_cap, cfg.method == Method::KernelAIH, cfg);
      clique = lift_clique(ck, run.clique);
      result.stats.iterations = run.iterations;
      result.stats.stages = run.stages;
      break;
    }
    case Method::Exact:
      clique = oracle::max_clique_exact(assoc.graph);
      break;
  }

  for (Vertex v : clique) result.mapping.push_back(assoc.label(v));
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!oracle::verify_common_subgraph(g1, g2, result.mapping)) {
    throw ValidationError("result failed verification: " + describe(result));
  }
  return result;
}

std::string to_json(const MCSResult& result) {
  nlohmann::json mapping = nlohmann::json::array();
  for (const auto& [i, h] : result.mapping) mapping.push_back({i, h});
  nlohmann::json stats = {
      {"iterations", result.stats.iterations},
      {"stages", result.stats.stages},
      {"kernel_size", nullptr},
      {"wall_ms", result.stats.wall_ms},
  };
  if (result.stats.kernel_size) stats["kernel_size"] = *result.stats.kernel_size;
  nlohmann::json out = {
      {"method", to_string(result.method)},
      {"size", result.size()},
      {"mapping", std::move(mapping)},
      {"stats", std::move(stats)},
      {"seed", result.seed},
  };
  return out.dump(2) + "\n";
}

}  // namespace mcs::pipeline
