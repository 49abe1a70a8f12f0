#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mcs {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  explicit VertexSet(std::vector<Vertex> members);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const;
  void insert(Vertex v);

  std::span<const Vertex> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// Undirected simple graph on vertices 0..n-1. Immutable after construction.
///
/// Neighbour lists are sorted. Graphs up to kBitMatrixLimit vertices also
/// carry a packed adjacency bit-matrix for O(1) adjacency tests.
class Graph {
 public:
  static constexpr std::size_t kBitMatrixLimit = 4096;

  Graph() = default;

  /// Throws ParameterError naming the offending pair on self-loops or
  /// out-of-range endpoints. Duplicate edges are merged.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  /// Takes ownership of symmetric adjacency lists; validated and sorted.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adjacency);

  std::size_t order() const noexcept { return adjacency_.size(); }
  std::size_t size() const noexcept { return edge_count_; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  /// All edges (u, v) with u < v, sorted ascending.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  void finalize();

  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Association graph of two graphs: vertex (i, h) has index i * n2 + h.
/// (i, h) ~ (j, k) iff i != j, h != k and {i,j} in E1 <=> {h,k} in E2.
struct AssociationGraph {
  Graph graph;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  /// The two input graphs, kept for factored matrix-vector products.
  Graph g1;
  Graph g2;

  Vertex index(Vertex i, Vertex h) const { return static_cast<Vertex>(i * n2 + h); }
  std::pair<Vertex, Vertex> label(Vertex v) const { return {static_cast<Vertex>(v / n2), static_cast<Vertex>(v % n2)}; }
};

inline constexpr std::size_t kDefaultAssociationBudget = 20000;

Graph complement(const Graph& g);

/// Throws ResourceError when n1 * n2 exceeds max_vertices, ParameterError on an empty input.
AssociationGraph association_graph(const Graph& g1, const Graph& g2,
                                   std::size_t max_vertices = kDefaultAssociationBudget);

/// G(n, p): every unordered pair is an edge independently with probability p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Relabelled copy. perm[v] is the image of v; the copy has edge
/// {perm[u], perm[v]} for every edge {u, v} of g.
std::pair<Graph, std::vector<Vertex>> permuted_copy(const Graph& g, std::uint64_t seed);

/// Subgraph induced by `keep`; vertex keep[i] becomes i.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

// DIMACS ascii edge format, 1-based indices.
Graph parse_dimacs(const std::string& text);
std::string write_dimacs(const Graph& g);
Graph read_dimacs_file(const std::string& path);
void write_dimacs_file(const Graph& g, const std::string& path);

}  // namespace mcs
