#include <gtest/gtest.h>

#include <sstream>

#include "mcs/error.hpp"
#include "mcs/kernel.hpp"
#include "mcs/oracle.hpp"
#include "support.hpp"

namespace mcs::kernel {
namespace {

using testing::complete;
using testing::cycle;
using testing::path;

std::size_t lifted_optimum(const KernelResult& kr) {
  return reconstruct_mis(kr, oracle::mis_exact(kr.kernel)).size();
}

bool is_maximal_independent(const Graph& g, const VertexSet& s) {
  if (!oracle::is_independent(g, s)) return false;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (s.contains(v)) continue;
    bool blocked = false;
    for (Vertex w : g.neighbors(v)) blocked = blocked || s.contains(w);
    if (!blocked) return false;
  }
  return true;
}

template <typename T>
std::size_t count_entries(const ReductionTrace& trace) {
  std::size_t n = 0;
  for (const auto& e : trace.entries) n += std::holds_alternative<T>(e) ? 1 : 0;
  return n;
}

TEST(LinearTime, Examples) {
  const auto p5 = linear_time(path(5), true);
  EXPECT_EQ(p5.mis.size(), 3u);
  EXPECT_TRUE(oracle::is_independent(path(5), p5.mis));
  EXPECT_EQ(p5.kernel.kernel.order(), 0u);

  const auto c4 = linear_time(cycle(4), true);
  EXPECT_EQ(c4.mis.size(), 2u);

  const auto k4 = linear_time(complete(4), false);
  EXPECT_EQ(k4.kernel.kernel, complete(4));
  EXPECT_TRUE(k4.mis.empty());
  EXPECT_EQ(k4.kernel.forced_count, 0u);
}

TEST(LinearTime, ExactKernelHasMinimumDegreeThree) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = erdos_renyi(8 + seed % 30, 0.05 + 0.004 * static_cast<double>(seed), seed);
    const auto r = linear_time(g, false);
    for (Vertex v = 0; v < r.kernel.kernel.order(); ++v) ASSERT_GE(r.kernel.kernel.degree(v), 3u);
    EXPECT_EQ(r.exact_kernel_order, r.kernel.kernel.order());
  }
}

TEST(LinearTime, InexactGivesMaximalIndependentSet) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = erdos_renyi(30, 0.15, seed);
    EXPECT_TRUE(is_maximal_independent(g, linear_time(g, true).mis));
    EXPECT_TRUE(is_maximal_independent(g, reduce_full(g, true).mis));
  }
}

TEST(DegreeTwo, CycleDeletesOneVertex) {
  ReductionState s(cycle(4));
  ASSERT_TRUE(s.degree_two_reduction(2));
  EXPECT_EQ(s.live_count(), 3u);
  EXPECT_EQ(count_entries<Exclude>(s.trace()), 1u);
  EXPECT_TRUE(s.audit());
}

TEST(DegreeTwo, SingleVertexOddPath) {
  const Graph p3 = path(3);
  ReductionState s(p3);
  ASSERT_TRUE(s.degree_two_reduction(1));
  ASSERT_EQ(count_entries<PathUndo>(s.trace()), 1u);
  const auto& undo = std::get<PathUndo>(s.trace().entries.front());
  EXPECT_EQ(undo.path_case, PathCase::OddNonAdjacent);
  EXPECT_EQ(undo.path, std::vector<Vertex>{1});
  EXPECT_TRUE(s.audit());
  s.collect_isolated();
  const auto kr = s.finish();
  EXPECT_EQ(lifted_optimum(kr), oracle::mis_exact(p3).size());
}

TEST(DegreeTwo, EvenPathBetweenAdjacentEndpoints) {
  // 0 and 1 adjacent, joined again through 0-2-3-1; pendants keep 0 and 1 at degree four.
  const Graph g(8, {{0, 1}, {0, 2}, {2, 3}, {3, 1}, {0, 4}, {0, 5}, {1, 6}, {1, 7}});
  ReductionState s(g);
  ASSERT_TRUE(s.degree_two_reduction(2));
  ASSERT_EQ(count_entries<PathUndo>(s.trace()), 1u);
  const auto& undo = std::get<PathUndo>(s.trace().entries.front());
  EXPECT_EQ(undo.path_case, PathCase::Even);
  EXPECT_EQ(undo.path, (std::vector<Vertex>{2, 3}));
  EXPECT_FALSE(s.alive(2));
  EXPECT_FALSE(s.alive(3));
  EXPECT_TRUE(s.audit());
  const auto kr = s.finish();
  EXPECT_EQ(lifted_optimum(kr), oracle::mis_exact(g).size());
}

TEST(DegreeTwo, OddPathWithAdjacentEndpoints) {
  // Triangle-free path 0-2-1 where 0 ~ 1, each endpoint with two pendants.
  const Graph g(7, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {0, 4}, {1, 5}, {1, 6}});
  ReductionState s(g);
  ASSERT_TRUE(s.degree_two_reduction(2));
  EXPECT_FALSE(s.alive(0));
  EXPECT_FALSE(s.alive(1));
  EXPECT_TRUE(s.audit());
  s.collect_isolated();
  EXPECT_EQ(lifted_optimum(s.finish()), oracle::mis_exact(g).size());
}

TEST(DegreeTwo, SharedEndpoint) {
  // Path 1-2 hangs off vertex 0 at both ends: 0-1-2-0, with 0 of degree four.
  const Graph g(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {0, 4}});
  ReductionState s(g);
  ASSERT_TRUE(s.degree_two_reduction(1));
  EXPECT_FALSE(s.alive(0));
  EXPECT_TRUE(s.audit());
}

TEST(DegreeTwo, RejectsWrongDegree) {
  ReductionState s(complete(4));
  EXPECT_THROW(s.degree_two_reduction(0), std::logic_error);
}

TEST(Mutations, BucketBookkeeping) {
  const Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  ReductionState s(star);
  s.delete_vertex(0);
  EXPECT_EQ(s.buckets().zero, (std::set<Vertex>{1, 2, 3}));
  EXPECT_TRUE(s.audit());

  ReductionState k2(complete(2));
  k2.contract(0, 1);
  EXPECT_EQ(k2.live_count(), 1u);
  EXPECT_EQ(k2.buckets().zero, std::set<Vertex>{1});
  EXPECT_TRUE(k2.audit());

  ReductionState k4(complete(4));
  k4.delete_vertex(3);
  EXPECT_EQ(k4.buckets().two, (std::set<Vertex>{0, 1, 2}));
  EXPECT_TRUE(k4.buckets().three_plus.empty());
  EXPECT_TRUE(k4.audit());

  EXPECT_THROW(k4.delete_vertex(3), std::logic_error);
  EXPECT_THROW(k4.contract(3, 0), std::logic_error);
}

TEST(Fold, P3) {
  ReductionState s(path(3));
  ASSERT_TRUE(s.vertex_fold(1));
  EXPECT_EQ(s.live_count(), 1u);
  const auto kr = s.finish();
  ASSERT_EQ(kr.kernel.order(), 1u);
  EXPECT_EQ(reconstruct_mis(kr, VertexSet{0}), (VertexSet{0, 2}));
  EXPECT_EQ(reconstruct_mis(kr, VertexSet{}), (VertexSet{1}));
}

TEST(Fold, C4BecomesK2) {
  ReductionState s(cycle(4));
  ASSERT_TRUE(s.vertex_fold(1));
  const auto kr = s.finish();
  EXPECT_EQ(kr.kernel, complete(2));
  EXPECT_EQ(lifted_optimum(kr), 2u);
}

TEST(Fold, SkipsTriangle) {
  ReductionState s(complete(3));
  EXPECT_FALSE(s.vertex_fold(0));
  EXPECT_EQ(s.live_count(), 3u);
}

TEST(Unconfined, Examples) {
  ReductionState k3(complete(3));
  EXPECT_TRUE(k3.unconfined_reduce(0));
  EXPECT_TRUE(k3.unconfined_reduce(1));
  EXPECT_FALSE(k3.unconfined_reduce(2));
  k3.collect_isolated();
  EXPECT_EQ(reconstruct_mis(k3.finish(), {}).size(), 1u);

  ReductionState lone(testing::empty(1));
  EXPECT_FALSE(lone.unconfined_reduce(0));

  ReductionState k2(complete(2));
  EXPECT_TRUE(k2.unconfined_reduce(0));
}

Graph diamond_gadget() {
  // S grows from {0} to {0, 1} through vertex 2; 3 and 4 see exactly {0, 1}
  // outside N(S).
  return Graph(5, {{0, 2}, {2, 1}, {0, 3}, {0, 4}, {1, 3}, {1, 4}});
}

TEST(Diamond, GadgetRemovesV) {
  const Graph g = diamond_gadget();
  ReductionState s(g);
  ASSERT_TRUE(s.diamond_reduce(0));
  EXPECT_FALSE(s.alive(0));
  EXPECT_EQ(lifted_optimum(s.finish()), oracle::mis_exact(g).size());
}

TEST(Diamond, NeedsNonAdjacentPair) {
  // K5 minus edge 0-1: S grows to {0, 1} and every candidate pair is adjacent.
  std::vector<Edge> e;
  for (Vertex u = 0; u < 5; ++u) {
    for (Vertex v = u + 1; v < 5; ++v) {
      if (u != 0 || v != 1) e.emplace_back(u, v);
    }
  }
  ReductionState s(Graph(5, e));
  EXPECT_FALSE(s.diamond_reduce(0));
  EXPECT_EQ(s.live_count(), 5u);
}

TEST(Diamond, PreservesIndependenceNumber) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = erdos_renyi(10, 0.3, seed);
    ReductionState s(g);
    for (Vertex v = 0; v < g.order(); ++v) s.diamond_reduce(v);
    ASSERT_TRUE(s.audit());
    ASSERT_EQ(lifted_optimum(s.finish()), testing::independence_number_by_subsets(g)) << "seed " << seed;
  }
}

Graph twin_gadget(bool with_edge) {
  // u = 0, v = 1, N = {2, 3, 4}.
  std::vector<Edge> e{{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}};
  if (with_edge) e.emplace_back(2, 3);
  return Graph(5, e);
}

TEST(Twin, WithEdgeIncludesPair) {
  const Graph g = twin_gadget(true);
  ReductionState s(g);
  ASSERT_TRUE(s.twin_reduce(0, 1));
  EXPECT_EQ(s.live_count(), 0u);
  const auto lifted = reconstruct_mis(s.finish(), {});
  EXPECT_EQ(lifted, (VertexSet{0, 1}));
  EXPECT_EQ(lifted.size(), oracle::mis_exact(g).size());
}

TEST(Twin, WithoutEdgeContracts) {
  const Graph g = twin_gadget(false);
  ReductionState s(g);
  ASSERT_TRUE(s.twin_reduce(0, 1));
  EXPECT_EQ(count_entries<TwinUndo>(s.trace()), 1u);
  const auto kr = s.finish();
  ASSERT_EQ(kr.kernel.order(), 1u);
  EXPECT_EQ(reconstruct_mis(kr, VertexSet{0}), (VertexSet{2, 3, 4}));
  EXPECT_EQ(reconstruct_mis(kr, VertexSet{}), (VertexSet{0, 1}));
  EXPECT_EQ(lifted_optimum(kr), 3u);
}

TEST(Twin, SkipsDifferentNeighbourhoods) {
  const Graph g(6, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 5}});
  ReductionState s(g);
  EXPECT_FALSE(s.twin_reduce(0, 1));
  EXPECT_FALSE(s.twin_reduce(0));
}

TEST(ReduceFull, TreesReduceCompletely) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph t = testing::random_tree(2 + seed % 14, seed);
    const auto r = reduce_full(t, false);
    EXPECT_EQ(r.kernel.kernel.order(), 0u);
    EXPECT_TRUE(oracle::is_independent(t, r.mis));
    EXPECT_EQ(r.mis.size(), testing::independence_number_by_subsets(t)) << "seed " << seed;
  }
}

TEST(ReduceFull, CompleteGraphs) {
  // All degrees are four, so LinearTime alone leaves K5 untouched; the
  // unconfined rule does not.
  EXPECT_EQ(reduce_full(complete(5), false, RuleSet::linear_time_only()).kernel.kernel, complete(5));
  const auto r = reduce_full(complete(5), false);
  EXPECT_EQ(r.kernel.kernel.order(), 0u);
  EXPECT_EQ(r.mis.size(), 1u);
}

TEST(ReduceFull, ExactOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 4 + seed % 11;
    const double p = 0.1 + 0.8 * static_cast<double>(seed % 9) / 8.0;
    const Graph g = erdos_renyi(n, p, seed);
    const auto r = reduce_full(g, false);
    const VertexSet lifted = reconstruct_mis(r.kernel, oracle::mis_exact(r.kernel.kernel));
    ASSERT_TRUE(oracle::is_independent(g, lifted));
    ASSERT_EQ(lifted.size(), testing::independence_number_by_subsets(g)) << "seed " << seed;
    ASSERT_EQ(lifted.size(), oracle::mis_exact(r.kernel.kernel).size() + r.kernel.forced_count);
  }
}

TEST(ReduceFull, ExactOnSparseGraphsWithFoldsAndPaths) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Graph g = erdos_renyi(14, 0.12 + 0.001 * static_cast<double>(seed), seed + 1000);
    for (const auto rules : {RuleSet::all(), RuleSet::linear_time_only()}) {
      const auto r = reduce_full(g, false, rules);
      const VertexSet lifted = reconstruct_mis(r.kernel, oracle::mis_exact(r.kernel.kernel));
      ASSERT_TRUE(oracle::is_independent(g, lifted));
      ASSERT_EQ(lifted.size(), testing::independence_number_by_subsets(g)) << "seed " << seed;
    }
  }
}

TEST(ReduceFull, AuditHoldsAfterEveryRule) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = erdos_renyi(16, 0.15, seed);
    ReductionState s(g);
    bool changed = true;
    while (changed) {
      changed = false;
      s.collect_isolated();
      ASSERT_TRUE(s.audit());
      for (Vertex v = 0; v < s.working_order() && !changed; ++v) {
        if (!s.alive(v)) continue;
        if (s.degree(v) == 1) changed = s.degree_one_reduction(v);
        else if (s.degree(v) == 2) changed = s.degree_two_reduction(v);
        else changed = s.vertex_fold(v) || s.twin_reduce(v) || s.unconfined_reduce(v) || s.diamond_reduce(v);
        ASSERT_TRUE(s.audit()) << "seed " << seed << " vertex " << v;
      }
    }
    const auto kr = s.finish();
    ASSERT_EQ(lifted_optimum(kr), testing::independence_number_by_subsets(g));
  }
}

TEST(ReduceFull, Deterministic) {
  const Graph g = erdos_renyi(40, 0.1, 3);
  const auto a = reduce_full(g, false);
  const auto b = reduce_full(g, false);
  EXPECT_EQ(a.kernel.kernel, b.kernel.kernel);
  std::ostringstream ta;
  std::ostringstream tb;
  write_trace(a.kernel, ta);
  write_trace(b.kernel, tb);
  EXPECT_EQ(ta.str(), tb.str());
}

TEST(Reconstruct, EmptyTraceIsIdentity) {
  const auto r = linear_time(complete(4), false);
  EXPECT_EQ(reconstruct_mis(r.kernel, VertexSet{2}), (VertexSet{2}));
}

TEST(Reconstruct, C4FullReduction) {
  const auto r = reduce_full(cycle(4), false);
  const auto lifted = reconstruct_mis(r.kernel, oracle::mis_exact(r.kernel.kernel));
  EXPECT_EQ(lifted.size(), 2u);
  EXPECT_TRUE(oracle::is_independent(cycle(4), lifted));
}

TEST(Reconstruct, RejectsDependentKernelSolution) {
  const auto r = linear_time(complete(4), false);
  EXPECT_THROW(reconstruct_mis(r.kernel, VertexSet{0, 1}), ParameterError);
  EXPECT_THROW(reconstruct_mis(r.kernel, VertexSet{7}), ParameterError);
}

TEST(Trace, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = erdos_renyi(25, 0.12, seed);
    const auto r = reduce_full(g, false);
    std::ostringstream out;
    write_trace(r.kernel, out);
    const auto parsed = parse_trace(out.str(), r.kernel.kernel);
    EXPECT_EQ(parsed.forced_count, r.kernel.forced_count);
    EXPECT_EQ(parsed.name_map, r.kernel.name_map);
    const auto kernel_mis = oracle::mis_exact(r.kernel.kernel);
    EXPECT_EQ(reconstruct_mis(parsed, kernel_mis), reconstruct_mis(r.kernel, kernel_mis));
  }
}

TEST(Trace, ParseErrors) {
  EXPECT_THROW(parse_trace("INC 0\n", testing::empty(0)), ParseError);
  EXPECT_THROW(parse_trace("o 2 2\nBOGUS 1\n", testing::empty(0)), ParseError);
  EXPECT_THROW(parse_trace("o 2 2\nINC 5\n", testing::empty(0)), ParseError);
  EXPECT_THROW(parse_trace("o 2 2\nm 0 1\n", testing::empty(0)), ParseError);
  EXPECT_THROW(parse_trace("o 3 3\nPATH sideways 0 1 1 2\n", testing::empty(0)), ParseError);
}

}  // namespace
}  // namespace mcs::kernel
