#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "mcs/graph.hpp"

// Maximum-independent-set kernelization: the degree-bucket LinearTime
// reducer plus vertex folding, twin, unconfined and diamond rules, with an
// undo trace that lifts any independent set of the kernel back to the input.
namespace mcs::kernel {

// Working vertices are the input vertices 0..n-1 followed by placeholders
// appended by fold and twin contractions. Trace entries use working indices.

struct Include {
  Vertex v;
};
struct Exclude {
  Vertex v;
};
/// Placeholder in the solution => {left, right}; otherwise {center}.
struct FoldUndo {
  Vertex placeholder;
  Vertex center;
  Vertex left;
  Vertex right;
};
/// Placeholder in the solution => the common neighbourhood; otherwise {u, v}.
struct TwinUndo {
  Vertex placeholder;
  Vertex u;
  Vertex v;
  std::array<Vertex, 3> neighborhood;
};

enum class PathCase { Cycle, SharedEndpoint, OddAdjacent, OddNonAdjacent, Even };
std::string to_string(PathCase c);

/// A maximal degree-two path removed by the LinearTime reducer. The removed
/// vertices were pushed on the deferred stack; replay pops them in order and
/// keeps each one whose path neighbours are all outside the solution.
/// OddNonAdjacent keeps path[0] in the graph and defers path[1..];
/// Even defers the whole path.
struct PathUndo {
  PathCase path_case;
  std::vector<Vertex> path;
  Vertex v;  // outside neighbour of path.front()
  Vertex w;  // outside neighbour of path.back()
};

using TraceEntry = std::variant<Include, Exclude, FoldUndo, TwinUndo, PathUndo>;

struct ReductionTrace {
  std::size_t original_order = 0;
  std::size_t working_order = 0;
  std::vector<TraceEntry> entries;

  /// Vertices the entries add on top of any kernel solution.
  std::size_t forced_count() const;
};

struct KernelResult {
  Graph kernel;
  ReductionTrace trace;
  /// kernel vertex -> working vertex
  std::vector<Vertex> name_map;
  std::size_t forced_count = 0;
};

struct DegreeBuckets {
  std::set<Vertex> zero;
  std::set<Vertex> one;
  std::set<Vertex> two;
  std::set<Vertex> three_plus;
};

struct RuleCounts {
  std::size_t degree_one = 0;
  std::size_t degree_two = 0;
  std::size_t inexact = 0;
  std::size_t fold = 0;
  std::size_t twin = 0;
  std::size_t unconfined = 0;
  std::size_t diamond = 0;
};

/// Mutable working graph of one reduction. Single owner, not thread-safe.
class ReductionState {
 public:
  explicit ReductionState(const Graph& g);

  std::size_t working_order() const noexcept { return nbrs_.size(); }
  std::size_t live_count() const noexcept { return live_; }
  bool alive(Vertex v) const { return v < alive_.size() && alive_[v] != 0; }
  std::size_t degree(Vertex v) const { return degree_[v]; }
  /// Live neighbours, ascending.
  std::vector<Vertex> neighbors(Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return alive(u) && alive(v) && member_[u].count(v) != 0; }
  const DegreeBuckets& buckets() const noexcept { return buckets_; }
  const ReductionTrace& trace() const noexcept { return trace_; }
  const RuleCounts& counts() const noexcept { return counts_; }

  // Primitive mutations. Throw std::logic_error on dead vertices.

  /// Removes v as excluded from the solution; neighbours migrate buckets.
  void delete_vertex(Vertex v);
  /// Merges v into w: w gains N(v) \ {w}, then v is removed (no trace entry).
  void contract(Vertex v, Vertex w);
  /// Records every degree-zero vertex as included and removes it.
  void collect_isolated();

  // Rules. Each returns true when it changed the graph.

  /// v has degree one: its neighbour is deleted.
  bool degree_one_reduction(Vertex v);
  /// u must have degree two (std::logic_error otherwise).
  bool degree_two_reduction(Vertex u);
  /// Deletes a vertex of maximum degree (smallest index on ties).
  bool inexact_reduction();
  bool vertex_fold(Vertex v);
  bool twin_reduce(Vertex u, Vertex v);
  /// Looks for a twin partner of u.
  bool twin_reduce(Vertex u);
  bool unconfined_reduce(Vertex v);
  /// Runs the unconfined search for v and, if v is confined, tests the
  /// diamond condition on the final set S.
  bool diamond_reduce(Vertex v);

  /// Recomputes degrees and buckets from scratch; false on any mismatch.
  bool audit() const;

  /// Residual graph on live vertices (ascending working index).
  KernelResult finish() const;

  // Per-rule work queues of vertices whose neighbourhood changed.
  enum Queue { kFoldQueue, kTwinQueue, kUnconfinedQueue, kDiamondQueue, kQueueCount };
  bool pop_dirty(Queue q, Vertex& v);
  void mark_all_dirty();

 private:
  enum class Confinement { Unconfined, Confined };

  void remove_vertex(Vertex v);
  bool add_edge(Vertex u, Vertex v);
  Vertex add_placeholder();
  void rebucket(Vertex v, std::size_t old_degree);
  std::set<Vertex>& bucket_for(std::size_t degree);
  void mark_dirty(Vertex v);
  void require_alive(Vertex v) const;
  Confinement confinement(Vertex v);
  std::pair<Vertex, Vertex> two_neighbors(Vertex v) const;
  /// Neighbour list of v with dead entries dropped.
  const std::vector<Vertex>& live(Vertex v) const;

  // Edges only disappear together with an endpoint, so neighbour lists and
  // membership sets are cleaned lazily and filtered through alive_.
  std::vector<std::unordered_set<Vertex>> member_;
  mutable std::vector<std::vector<Vertex>> nbrs_;
  std::vector<std::size_t> degree_;
  std::vector<char> alive_;
  std::size_t live_ = 0;
  DegreeBuckets buckets_;
  ReductionTrace trace_;
  RuleCounts counts_;

  std::array<std::deque<Vertex>, kQueueCount> queues_;
  std::array<std::vector<char>, kQueueCount> queued_;

  // Scratch for the unconfined search, indexed by working vertex.
  std::vector<std::uint32_t> in_s_stamp_;
  std::vector<std::uint32_t> in_ns_stamp_;
  std::vector<std::uint32_t> s_count_;
  std::uint32_t stamp_ = 0;
  std::vector<Vertex> s_;
  std::vector<Vertex> ns_;

  // Graph version counter and, per vertex, the version at which its
  // unconfined search last ended with S = {v}.
  static constexpr std::uint64_t kNoEpoch = ~std::uint64_t{0};
  std::uint64_t epoch_ = 0;
  std::vector<std::uint64_t> singleton_epoch_;
};

struct RuleSet {
  bool fold = true;
  bool twin = true;
  bool unconfined = true;
  bool diamond = true;

  static RuleSet all() { return {}; }
  static RuleSet linear_time_only() { return {false, false, false, false}; }
};

struct Reduction {
  /// With inexact reductions: a maximal independent set of the input.
  /// Without: the independent set forced by the trace alone (empty kernel solution).
  VertexSet mis;
  KernelResult kernel;
  RuleCounts counts;
  /// Live vertices when the exact rules first ran dry (before any inexact step).
  std::size_t exact_kernel_order = 0;
};

/// Degree-one / degree-two / inexact loop. Without inexact reductions the
/// loop stops when only vertices of degree >= 3 remain.
Reduction linear_time(const Graph& g, bool allow_inexact);

/// LinearTime, VertexFolding, Twin, Unconfined, Diamond in that order,
/// restarting from the first rule whenever one fires.
Reduction reduce_full(const Graph& g, bool allow_inexact, RuleSet rules = RuleSet::all());

/// Lifts an independent set of the kernel to one of the input graph of size
/// |kernel_mis| + forced_count. Throws ParameterError if kernel_mis is not
/// independent in the kernel.
VertexSet reconstruct_mis(const KernelResult& kr, const VertexSet& kernel_mis);

/// Grows `s` to a maximal independent set of g, scanning vertices in index order.
VertexSet extend_to_maximal(const Graph& g, const VertexSet& s);

/// Line-oriented sidecar: `o n working`, `m k x` name-map lines, then
/// `INC v`, `EXC v`, `FOLD x v u w`, `TWIN x u v a b c`,
/// `PATH case v w l p1 .. pl`. Indices are 0-based working vertices.
void write_trace(const KernelResult& kr, std::ostream& out);
KernelResult parse_trace(const std::string& text, Graph kernel);

}  // namespace mcs::kernel
