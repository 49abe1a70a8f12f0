#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mcs/graph.hpp"

// Small graph builders and subset-enumeration oracles shared by the tests.
// The enumeration helpers deliberately avoid the library's own solvers.
namespace mcs::testing {

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph(n, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) e.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return Graph(n, e);
}

inline Graph empty(std::size_t n) { return Graph(n, std::vector<Edge>{}); }

/// Random labelled tree on n vertices (random parent for each vertex).
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>(rng() % v), v);
  return Graph(n, e);
}

/// Largest clique size by enumerating every vertex subset (n <= 20).
inline std::size_t clique_number_by_subsets(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) nbr[u] |= 1u << v;
  }
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u) {
      if ((mask >> u & 1u) && ((mask & ~(1u << u)) & ~nbr[u])) ok = false;
    }
    if (ok) best = size;
  }
  return best;
}

inline std::size_t independence_number_by_subsets(const Graph& g) {
  return clique_number_by_subsets(complement(g));
}

}  // namespace mcs::testing
