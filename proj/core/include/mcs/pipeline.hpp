#pragma once

#include <cstdint>
#include <string>

#include "mcs/annealing.hpp"
#include "mcs/graph.hpp"
#include "mcs/kernel.hpp"
#include "mcs/result.hpp"

// Association graph -> optional complement kernelization -> dynamics ->
// lifted clique -> vertex mapping between the two input graphs.
namespace mcs::pipeline {

struct SolveConfig {
  Method method = Method::AIH;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  std::size_t max_iters = 1'000'000;
  double delta = 0.01;
  double noise_sigma = 0.01;
  annealing::BoundMode bound = annealing::BoundMode::Safe;

  /// Throws ParameterError on non-positive tolerances or delta outside (0,1).
  void validate() const;
};

struct CliqueKernel {
  /// Reduction of the complement graph; its kernel is an MIS instance.
  kernel::KernelResult reduction;
  /// Complement of reduction.kernel: cliques here are kernel independent sets.
  Graph clique_graph;
  /// Lift of the empty kernel solution.
  VertexSet forced;
};

/// Runs LinearTime without inexact reductions on the complement of assoc.graph.
CliqueKernel kernelize_for_clique(const AssociationGraph& assoc);

/// Clique of ck.clique_graph -> clique of the association graph.
VertexSet lift_clique(const CliqueKernel& ck, const VertexSet& kernel_clique);

/// Always verifies the mapping; a failure throws ValidationError carrying
/// the offending mapping.
MCSResult solve_mcs(const Graph& g1, const Graph& g2, const SolveConfig& cfg);

/// {method, size, mapping: [[i,h],...], stats{...}, seed}
std::string to_json(const MCSResult& result);

}  // namespace mcs::pipeline
