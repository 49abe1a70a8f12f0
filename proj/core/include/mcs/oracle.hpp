#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "mcs/graph.hpp"
#include "mcs/result.hpp"

// Exact, small-scale solvers used as ground truth for the heuristics.
namespace mcs::oracle {

struct OracleBudget {
  std::size_t max_vertices = 64;
  long long max_millis = 60'000;
};

/// Maximum clique by Bron-Kerbosch with pivoting (degeneracy order at the top
/// level). Among maximum cliques the lexicographically smallest is returned.
/// Throws BudgetError when g.order() > budget.max_vertices or time runs out.
VertexSet max_clique_exact(const Graph& g, const OracleBudget& budget = {});

/// Maximum independent set, i.e. max_clique_exact(complement(g)).
VertexSet mis_exact(const Graph& g, const OracleBudget& budget = {});

/// Maximum common induced subgraph by exhaustive enumeration of injective
/// partial maps. Only practical for n1, n2 <= 6 or so.
MCSResult mcs_brute_force(const Graph& g1, const Graph& g2, const OracleBudget& budget = {});

bool is_clique(const Graph& g, const VertexSet& s);
bool is_independent(const Graph& g, const VertexSet& s);

/// True iff the mapping is injective in both coordinates, in range, and
/// preserves adjacency and non-adjacency between every mapped pair.
bool verify_common_subgraph(const Graph& g1, const Graph& g2,
                            std::span<const std::pair<Vertex, Vertex>> mapping);

/// Dominant eigenvalue of the adjacency submatrix on `restriction`, by
/// shifted power iteration from the all-ones vector.
double largest_eigenvalue(const Graph& g, const VertexSet& restriction);

}  // namespace mcs::oracle
