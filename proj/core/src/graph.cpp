#include "mcs/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mcs/error.hpp"

namespace mcs {

VertexSet::VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

void VertexSet::insert(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) members_.insert(it, v);
}

namespace {

std::string pair_text(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ParameterError("edge " + pair_text(u, v) + " has an endpoint >= n=" + std::to_string(n));
    if (u == v) throw ParameterError("edge " + pair_text(u, v) + " is a self-loop");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  finalize();
}

Graph Graph::from_adjacency(std::vector<std::vector<Vertex>> adjacency) {
  Graph g;
  g.adjacency_ = std::move(adjacency);
  const std::size_t n = g.adjacency_.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (Vertex v : g.adjacency_[u]) {
      if (v >= n) throw ParameterError("edge " + pair_text(static_cast<Vertex>(u), v) + " out of range");
      if (v == u) throw ParameterError("edge " + pair_text(v, v) + " is a self-loop");
    }
  }
  g.finalize();
  for (std::size_t u = 0; u < n; ++u) {
    for (Vertex v : g.adjacency_[u]) {
      if (!std::binary_search(g.adjacency_[v].begin(), g.adjacency_[v].end(), static_cast<Vertex>(u))) {
        throw ParameterError("adjacency is not symmetric at " + pair_text(static_cast<Vertex>(u), v));
      }
    }
  }
  return g;
}

void Graph::finalize() {
  std::size_t twice = 0;
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.shrink_to_fit();
    twice += list.size();
  }
  edge_count_ = twice / 2;
  const std::size_t n = adjacency_.size();
  bits_.clear();
  if (n <= kBitMatrixLimit) {
    const std::size_t words = (n * n + 63) / 64;
    bits_.assign(words, 0);
    for (std::size_t u = 0; u < n; ++u) {
      for (Vertex v : adjacency_[u]) {
        const std::size_t bit = u * n + v;
        bits_[bit / 64] |= std::uint64_t{1} << (bit % 64);
      }
    }
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const std::size_t n = adjacency_.size();
  if (!bits_.empty()) {
    const std::size_t bit = static_cast<std::size_t>(u) * n + v;
    return (bits_[bit / 64] >> (bit % 64)) & 1U;
  }
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph complement(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<Vertex>> adjacency(n);
  for (Vertex u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    auto it = nb.begin();
    adjacency[u].reserve(n - 1 - nb.size());
    for (Vertex v = 0; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      if (v != u) adjacency[u].push_back(v);
    }
  }
  return Graph::from_adjacency(std::move(adjacency));
}

AssociationGraph association_graph(const Graph& g1, const Graph& g2, std::size_t max_vertices) {
  const std::size_t n1 = g1.order();
  const std::size_t n2 = g2.order();
  if (n1 == 0 || n2 == 0) throw ParameterError("association graph needs two non-empty graphs");
  if (n1 > max_vertices / n2) {
    throw ResourceError("association graph of order " + std::to_string(n1) + "x" + std::to_string(n2) +
                        " exceeds the vertex budget " + std::to_string(max_vertices));
  }
  AssociationGraph assoc;
  assoc.n1 = n1;
  assoc.n2 = n2;
  std::vector<std::vector<Vertex>> adjacency(n1 * n2);
  for (Vertex i = 0; i < n1; ++i) {
    for (Vertex h = 0; h < n2; ++h) {
      auto& list = adjacency[assoc.index(i, h)];
      for (Vertex j = 0; j < n1; ++j) {
        if (j == i) continue;
        const bool e1 = g1.adjacent(i, j);
        for (Vertex k = 0; k < n2; ++k) {
          if (k == h) continue;
          if (e1 == g2.adjacent(h, k)) list.push_back(assoc.index(j, k));
        }
      }
    }
  }
  assoc.graph = Graph::from_adjacency(std::move(adjacency));
  assoc.g1 = g1;
  assoc.g2 = g2;
  return assoc;
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0,1], got " + std::to_string(p));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      // Always draw, so the stream position depends only on n.
      if (coin(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

std::pair<Graph, std::vector<Vertex>> permuted_copy(const Graph& g, std::uint64_t seed) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  edges.reserve(g.size());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return {Graph(g.order(), edges), std::move(perm)};
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<std::int64_t> position(g.order(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = static_cast<std::int64_t>(i);
  std::vector<std::vector<Vertex>> adjacency(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (Vertex w : g.neighbors(keep[i])) {
      if (position[w] >= 0) adjacency[i].push_back(static_cast<Vertex>(position[w]));
    }
  }
  return Graph::from_adjacency(std::move(adjacency));
}

}  // namespace mcs
