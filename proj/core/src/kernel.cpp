#include "mcs/kernel.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mcs/error.hpp"

namespace mcs::kernel {

std::string to_string(PathCase c) {
  switch (c) {
    case PathCase::Cycle: return "cycle";
    case PathCase::SharedEndpoint: return "shared-endpoint";
    case PathCase::OddAdjacent: return "odd-adjacent";
    case PathCase::OddNonAdjacent: return "odd-nonadjacent";
    case PathCase::Even: return "even";
  }
  return "unknown";
}

namespace {

PathCase parse_path_case(const std::string& text, std::size_t line) {
  for (auto c : {PathCase::Cycle, PathCase::SharedEndpoint, PathCase::OddAdjacent, PathCase::OddNonAdjacent,
                 PathCase::Even}) {
    if (to_string(c) == text) return c;
  }
  throw ParseError(line, "unknown path case '" + text + "'");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::size_t ReductionTrace::forced_count() const {
  std::size_t total = 0;
  for (const auto& entry : entries) {
    total += std::visit(Overloaded{
                            [](const Include&) -> std::size_t { return 1; },
                            [](const Exclude&) -> std::size_t { return 0; },
                            [](const FoldUndo&) -> std::size_t { return 1; },
                            [](const TwinUndo&) -> std::size_t { return 2; },
                            [](const PathUndo& p) -> std::size_t {
                              const std::size_t l = p.path.size();
                              return p.path_case == PathCase::OddNonAdjacent ? (l - 1) / 2 : l / 2;
                            },
                        },
                        entry);
  }
  return total;
}

ReductionState::ReductionState(const Graph& g)
    : member_(g.order()), nbrs_(g.order()), degree_(g.order()), alive_(g.order(), 1), live_(g.order()) {
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto nb = g.neighbors(v);
    member_[v].reserve(nb.size());
    member_[v].insert(nb.begin(), nb.end());
    nbrs_[v].assign(nb.begin(), nb.end());
    degree_[v] = nb.size();
    bucket_for(nb.size()).insert(v);
  }
  trace_.original_order = g.order();
  trace_.working_order = g.order();
  for (auto& flags : queued_) flags.assign(g.order(), 0);
  in_s_stamp_.assign(g.order(), 0);
  in_ns_stamp_.assign(g.order(), 0);
  singleton_epoch_.assign(g.order(), kNoEpoch);
  s_count_.assign(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) mark_dirty(v);
}

std::set<Vertex>& ReductionState::bucket_for(std::size_t degree) {
  switch (degree) {
    case 0: return buckets_.zero;
    case 1: return buckets_.one;
    case 2: return buckets_.two;
    default: return buckets_.three_plus;
  }
}

void ReductionState::rebucket(Vertex v, std::size_t old_degree) {
  const std::size_t d = degree_[v];
  if (std::min<std::size_t>(d, 3) == std::min<std::size_t>(old_degree, 3)) return;
  bucket_for(old_degree).erase(v);
  bucket_for(d).insert(v);
}

void ReductionState::mark_all_dirty() {
  for (Vertex v = 0; v < nbrs_.size(); ++v) {
    if (alive_[v]) mark_dirty(v);
  }
}

void ReductionState::mark_dirty(Vertex v) {
  for (std::size_t q = 0; q < kQueueCount; ++q) {
    if (!queued_[q][v]) {
      queued_[q][v] = 1;
      queues_[q].push_back(v);
    }
  }
}

bool ReductionState::pop_dirty(Queue q, Vertex& v) {
  while (!queues_[q].empty()) {
    v = queues_[q].front();
    queues_[q].pop_front();
    queued_[q][v] = 0;
    if (alive(v)) return true;
  }
  return false;
}

void ReductionState::require_alive(Vertex v) const {
  if (!alive(v)) throw std::logic_error("vertex " + std::to_string(v) + " is not alive");
}

void ReductionState::remove_vertex(Vertex v) {
  require_alive(v);
  ++epoch_;
  for (Vertex w : live(v)) {
    --degree_[w];
    rebucket(w, degree_[w] + 1);
    mark_dirty(w);
  }
  bucket_for(degree_[v]).erase(v);
  alive_[v] = 0;
  --live_;
  degree_[v] = 0;
  nbrs_[v].clear();
  nbrs_[v].shrink_to_fit();
  std::unordered_set<Vertex>().swap(member_[v]);
}

bool ReductionState::add_edge(Vertex u, Vertex v) {
  if (u == v || adjacent(u, v)) return false;
  ++epoch_;
  member_[u].insert(v);
  member_[v].insert(u);
  nbrs_[u].push_back(v);
  nbrs_[v].push_back(u);
  ++degree_[u];
  ++degree_[v];
  rebucket(u, degree_[u] - 1);
  rebucket(v, degree_[v] - 1);
  mark_dirty(u);
  mark_dirty(v);
  return true;
}

Vertex ReductionState::add_placeholder() {
  const auto x = static_cast<Vertex>(nbrs_.size());
  member_.emplace_back();
  nbrs_.emplace_back();
  degree_.push_back(0);
  alive_.push_back(1);
  ++live_;
  buckets_.zero.insert(x);
  for (auto& flags : queued_) flags.push_back(0);
  in_s_stamp_.push_back(0);
  in_ns_stamp_.push_back(0);
  singleton_epoch_.push_back(kNoEpoch);
  s_count_.push_back(0);
  trace_.working_order = nbrs_.size();
  mark_dirty(x);
  return x;
}

void ReductionState::delete_vertex(Vertex v) {
  require_alive(v);
  trace_.entries.push_back(Exclude{v});
  remove_vertex(v);
}

void ReductionState::contract(Vertex v, Vertex w) {
  require_alive(v);
  require_alive(w);
  const std::vector<Vertex> moved = live(v);
  for (Vertex x : moved) {
    if (x != w) add_edge(w, x);
  }
  remove_vertex(v);
}

void ReductionState::collect_isolated() {
  while (!buckets_.zero.empty()) {
    const Vertex v = *buckets_.zero.begin();
    trace_.entries.push_back(Include{v});
    remove_vertex(v);
  }
}

std::pair<Vertex, Vertex> ReductionState::two_neighbors(Vertex v) const {
  const auto& nb = live(v);
  const Vertex a = nb[0];
  const Vertex b = nb[1];
  return {std::min(a, b), std::max(a, b)};
}

bool ReductionState::degree_one_reduction(Vertex v) {
  if (!alive(v) || degree(v) != 1) return false;
  delete_vertex(live(v).front());
  ++counts_.degree_one;
  return true;
}

bool ReductionState::degree_two_reduction(Vertex u) {
  require_alive(u);
  if (degree(u) != 2) throw std::logic_error("degree_two_reduction on a vertex of degree " + std::to_string(degree(u)));
  ++counts_.degree_two;

  // Walks from u through `first` while the vertices have degree two.
  // Returns the visited degree-two vertices and the vertex that stopped the walk.
  auto walk = [&](Vertex first) {
    std::vector<Vertex> seen;
    Vertex prev = u;
    Vertex cur = first;
    while (cur != u && degree(cur) == 2) {
      seen.push_back(cur);
      auto [a, b] = two_neighbors(cur);
      const Vertex next = a == prev ? b : a;
      prev = cur;
      cur = next;
    }
    return std::pair{seen, cur};
  };

  const auto [a, b] = two_neighbors(u);
  auto [left, v] = walk(a);
  if (v == u) {
    delete_vertex(u);
    return true;
  }
  auto [right, w] = walk(b);

  std::vector<Vertex> path(left.rbegin(), left.rend());
  path.push_back(u);
  path.insert(path.end(), right.begin(), right.end());

  if (v == w) {
    delete_vertex(v);
    return true;
  }
  if (path.size() % 2 == 1) {
    if (adjacent(v, w)) {
      delete_vertex(v);
      delete_vertex(w);
      return true;
    }
    for (std::size_t i = 1; i < path.size(); ++i) remove_vertex(path[i]);
    add_edge(path.front(), w);
    trace_.entries.push_back(PathUndo{PathCase::OddNonAdjacent, path, v, w});
    // path[0] is left with the non-adjacent neighbours v and w; folding it
    // keeps degree-two vertices out of the kernel.
    if (!vertex_fold(path.front())) throw std::logic_error("fold after odd path reduction did not apply");
    return true;
  }
  for (Vertex p : path) remove_vertex(p);
  add_edge(v, w);
  trace_.entries.push_back(PathUndo{PathCase::Even, std::move(path), v, w});
  return true;
}

bool ReductionState::inexact_reduction() {
  if (buckets_.three_plus.empty()) return false;
  Vertex pick = *buckets_.three_plus.begin();
  for (Vertex v : buckets_.three_plus) {
    if (degree(v) > degree(pick)) pick = v;
  }
  delete_vertex(pick);
  ++counts_.inexact;
  return true;
}

bool ReductionState::vertex_fold(Vertex v) {
  if (!alive(v) || degree(v) != 2) return false;
  const auto [u, w] = two_neighbors(v);
  if (adjacent(u, w)) return false;
  const Vertex x = add_placeholder();
  remove_vertex(v);
  contract(u, x);
  contract(w, x);
  trace_.entries.push_back(FoldUndo{x, v, u, w});
  ++counts_.fold;
  return true;
}

bool ReductionState::twin_reduce(Vertex u, Vertex v) {
  if (u == v || !alive(u) || !alive(v) || degree(u) != 3 || degree(v) != 3 || adjacent(u, v)) return false;
  std::array<Vertex, 3> nb{};
  std::copy(live(u).begin(), live(u).end(), nb.begin());
  std::sort(nb.begin(), nb.end());
  if (!std::all_of(nb.begin(), nb.end(), [&](Vertex y) { return adjacent(v, y); })) return false;
  const bool has_edge = adjacent(nb[0], nb[1]) || adjacent(nb[0], nb[2]) || adjacent(nb[1], nb[2]);
  if (has_edge) {
    for (Vertex x : nb) delete_vertex(x);
    collect_isolated();
  } else {
    const Vertex x = add_placeholder();
    remove_vertex(u);
    remove_vertex(v);
    for (Vertex y : nb) contract(y, x);
    trace_.entries.push_back(TwinUndo{x, u, v, nb});
  }
  ++counts_.twin;
  return true;
}

bool ReductionState::twin_reduce(Vertex u) {
  if (!alive(u) || degree(u) != 3) return false;
  Vertex anchor = live(u).front();
  for (Vertex a : live(u)) {
    if (degree(a) < degree(anchor)) anchor = a;
  }
  std::vector<Vertex> candidates;
  for (Vertex v : live(anchor)) {
    if (v != u && degree(v) == 3) candidates.push_back(v);
  }
  std::sort(candidates.begin(), candidates.end());
  for (Vertex v : candidates) {
    if (twin_reduce(u, v)) return true;
  }
  return false;
}

ReductionState::Confinement ReductionState::confinement(Vertex v) {
  ++stamp_;
  if (stamp_ == 0) {
    std::fill(in_s_stamp_.begin(), in_s_stamp_.end(), 0);
    std::fill(in_ns_stamp_.begin(), in_ns_stamp_.end(), 0);
    stamp_ = 1;
  }
  s_.assign(1, v);
  ns_.clear();
  in_s_stamp_[v] = stamp_;
  auto add_to_s = [&](Vertex x) {
    in_s_stamp_[x] = stamp_;
    s_.push_back(x);
    for (Vertex y : live(x)) {
      if (in_ns_stamp_[y] == stamp_) {
        ++s_count_[y];
      } else {
        in_ns_stamp_[y] = stamp_;
        s_count_[y] = 1;
        ns_.push_back(y);
      }
    }
  };
  for (Vertex y : live(v)) {
    in_ns_stamp_[y] = stamp_;
    s_count_[y] = 1;
    ns_.push_back(y);
  }
  auto in_closed = [&](Vertex y) { return in_s_stamp_[y] == stamp_ || in_ns_stamp_[y] == stamp_; };

  while (true) {
    bool have_extension = false;
    Vertex extension = 0;
    const std::size_t closed_size = s_.size() + ns_.size();
    for (Vertex u : ns_) {
      // |N(u) \ N[S]| >= deg(u) - (|N[S]| - 1), so high-degree u cannot qualify.
      if (s_count_[u] != 1 || degree_[u] > closed_size) continue;
      std::size_t outside = 0;
      Vertex last = 0;
      for (Vertex y : live(u)) {
        if (in_closed(y)) continue;
        last = y;
        if (++outside == 2) break;
      }
      if (outside == 0) return Confinement::Unconfined;
      if (outside == 1 && !have_extension) {
        have_extension = true;
        extension = last;
      }
    }
    if (!have_extension) return Confinement::Confined;
    add_to_s(extension);
  }
}

bool ReductionState::unconfined_reduce(Vertex v) {
  if (!alive(v)) return false;
  if (confinement(v) != Confinement::Unconfined) {
    if (s_.size() == 1) singleton_epoch_[v] = epoch_;
    return false;
  }
  delete_vertex(v);
  ++counts_.unconfined;
  return true;
}

bool ReductionState::diamond_reduce(Vertex v) {
  if (!alive(v)) return false;
  // A diamond needs two vertices of N(S) sharing two neighbours in S. When the
  // unconfined search already ended with S = {v} on the current graph there
  // is nothing to find.
  if (singleton_epoch_[v] == epoch_) return false;
  if (confinement(v) == Confinement::Unconfined) {
    delete_vertex(v);
    ++counts_.unconfined;
    return true;
  }
  // N(u) \ N(S) for u in N(S), kept only when it has exactly two members.
  std::map<std::pair<Vertex, Vertex>, std::vector<Vertex>> by_pair;
  for (Vertex u : ns_) {
    Vertex found[2] = {0, 0};
    std::size_t count = 0;
    for (Vertex y : live(u)) {
      if (in_ns_stamp_[y] == stamp_) continue;
      if (count == 2) {
        count = 3;
        break;
      }
      found[count++] = y;
    }
    if (count != 2) continue;
    by_pair[{std::min(found[0], found[1]), std::max(found[0], found[1])}].push_back(u);
  }
  for (const auto& [pair, us] : by_pair) {
    for (std::size_t i = 0; i < us.size(); ++i) {
      for (std::size_t j = i + 1; j < us.size(); ++j) {
        if (!adjacent(us[i], us[j])) {
          delete_vertex(v);
          ++counts_.diamond;
          return true;
        }
      }
    }
  }
  return false;
}

std::vector<Vertex> ReductionState::neighbors(Vertex v) const {
  std::vector<Vertex> out = live(v);
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Vertex>& ReductionState::live(Vertex v) const {
  auto& list = nbrs_[v];
  if (list.size() != degree_[v]) std::erase_if(list, [&](Vertex w) { return !alive_[w]; });
  return list;
}

bool ReductionState::audit() const {
  std::size_t live_total = 0;
  for (Vertex v = 0; v < nbrs_.size(); ++v) {
    const bool in0 = buckets_.zero.count(v) != 0;
    const bool in1 = buckets_.one.count(v) != 0;
    const bool in2 = buckets_.two.count(v) != 0;
    const bool in3 = buckets_.three_plus.count(v) != 0;
    const int memberships = int{in0} + int{in1} + int{in2} + int{in3};
    if (!alive_[v]) {
      if (memberships != 0 || degree_[v] != 0) return false;
      continue;
    }
    ++live_total;
    if (memberships != 1) return false;
    std::vector<Vertex> seen;
    for (Vertex w : nbrs_[v]) {
      if (!alive_[w]) continue;
      if (w == v || member_[v].count(w) == 0 || member_[w].count(v) == 0) return false;
      seen.push_back(w);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    const std::size_t d = seen.size();
    if (d != degree_[v]) return false;
    if ((d == 0) != in0 || (d == 1) != in1 || (d == 2) != in2 || (d >= 3) != in3) return false;
  }
  return live_total == live_;
}

KernelResult ReductionState::finish() const {
  KernelResult result;
  std::vector<std::int64_t> position(nbrs_.size(), -1);
  for (Vertex v = 0; v < nbrs_.size(); ++v) {
    if (!alive_[v]) continue;
    position[v] = static_cast<std::int64_t>(result.name_map.size());
    result.name_map.push_back(v);
  }
  std::vector<std::vector<Vertex>> adjacency(result.name_map.size());
  for (std::size_t k = 0; k < result.name_map.size(); ++k) {
    for (Vertex w : live(result.name_map[k])) adjacency[k].push_back(static_cast<Vertex>(position[w]));
  }
  result.kernel = Graph::from_adjacency(std::move(adjacency));
  result.trace = trace_;
  result.forced_count = trace_.forced_count();
  return result;
}

namespace {

bool linear_step(ReductionState& state) {
  state.collect_isolated();
  const auto& buckets = state.buckets();
  if (!buckets.one.empty()) return state.degree_one_reduction(*buckets.one.begin());
  if (!buckets.two.empty()) return state.degree_two_reduction(*buckets.two.begin());
  return false;
}

template <typename Rule>
bool queue_pass(ReductionState& state, ReductionState::Queue queue, Rule&& rule) {
  Vertex v = 0;
  while (state.pop_dirty(queue, v)) {
    if (rule(v)) return true;
  }
  return false;
}

Reduction finalize(const Graph& g, ReductionState& state, bool allow_inexact, std::size_t exact_order) {
  state.collect_isolated();
  Reduction out;
  out.exact_kernel_order = exact_order;
  out.kernel = state.finish();
  out.counts = state.counts();
  out.mis = reconstruct_mis(out.kernel, {});
  if (allow_inexact) out.mis = extend_to_maximal(g, out.mis);
  return out;
}

}  // namespace

Reduction linear_time(const Graph& g, bool allow_inexact) {
  ReductionState state(g);
  std::optional<std::size_t> exact_order;
  while (true) {
    if (linear_step(state)) continue;
    if (!exact_order) exact_order = state.live_count();
    if (allow_inexact && state.inexact_reduction()) continue;
    break;
  }
  return finalize(g, state, allow_inexact, *exact_order);
}

Reduction reduce_full(const Graph& g, bool allow_inexact, RuleSet rules) {
  ReductionState state(g);
  std::optional<std::size_t> exact_order;
  std::size_t swept_at = ~std::size_t{0};
  using Q = ReductionState::Queue;
  while (true) {
    if (linear_step(state)) continue;
    if (rules.fold && queue_pass(state, Q::kFoldQueue, [&](Vertex v) { return state.vertex_fold(v); })) continue;
    if (rules.twin && queue_pass(state, Q::kTwinQueue, [&](Vertex v) { return state.twin_reduce(v); })) continue;
    if (rules.unconfined &&
        queue_pass(state, Q::kUnconfinedQueue, [&](Vertex v) { return state.unconfined_reduce(v); })) {
      continue;
    }
    if (rules.diamond && queue_pass(state, Q::kDiamondQueue, [&](Vertex v) { return state.diamond_reduce(v); })) {
      continue;
    }
    // The queues only hold vertices next to a change, while unconfined and
    // diamond can be enabled two hops away. One pass over every live vertex
    // confirms the fixpoint; it is skipped once inexact steps take over.
    if (!allow_inexact && swept_at != state.trace().entries.size()) {
      swept_at = state.trace().entries.size();
      state.mark_all_dirty();
      continue;
    }
    if (!exact_order) exact_order = state.live_count();
    if (allow_inexact && state.inexact_reduction()) continue;
    break;
  }
  return finalize(g, state, allow_inexact, *exact_order);
}

VertexSet reconstruct_mis(const KernelResult& kr, const VertexSet& kernel_mis) {
  const auto& kernel = kr.kernel;
  for (std::size_t a = 0; a < kernel_mis.size(); ++a) {
    if (kernel_mis[a] >= kernel.order()) throw ParameterError("kernel solution vertex out of range");
    for (std::size_t b = a + 1; b < kernel_mis.size(); ++b) {
      if (kernel.adjacent(kernel_mis[a], kernel_mis[b])) {
        throw ParameterError("kernel solution is not independent: " + std::to_string(kernel_mis[a]) + " ~ " +
                             std::to_string(kernel_mis[b]));
      }
    }
  }
  const auto& trace = kr.trace;
  std::vector<char> in(trace.working_order, 0);
  for (Vertex k : kernel_mis) in[kr.name_map[k]] = 1;

  for (auto it = trace.entries.rbegin(); it != trace.entries.rend(); ++it) {
    std::visit(Overloaded{
                   [&](const Include& e) { in[e.v] = 1; },
                   [&](const Exclude& e) { in[e.v] = 0; },
                   [&](const FoldUndo& e) {
                     if (in[e.placeholder]) {
                       in[e.placeholder] = 0;
                       in[e.left] = 1;
                       in[e.right] = 1;
                     } else {
                       in[e.center] = 1;
                     }
                   },
                   [&](const TwinUndo& e) {
                     if (in[e.placeholder]) {
                       in[e.placeholder] = 0;
                       for (Vertex y : e.neighborhood) in[y] = 1;
                     } else {
                       in[e.u] = 1;
                       in[e.v] = 1;
                     }
                   },
                   [&](const PathUndo& e) {
                     const auto& p = e.path;
                     const std::size_t first = e.path_case == PathCase::OddNonAdjacent ? 1 : 0;
                     for (std::size_t i = first; i < p.size(); ++i) {
                       const Vertex before = i == 0 ? e.v : p[i - 1];
                       const Vertex after = i + 1 == p.size() ? e.w : p[i + 1];
                       if (!in[before] && !in[after]) in[p[i]] = 1;
                     }
                   },
               },
               *it);
  }

  std::vector<Vertex> lifted;
  for (Vertex v = 0; v < trace.working_order; ++v) {
    if (!in[v]) continue;
    if (v >= trace.original_order) throw std::logic_error("placeholder " + std::to_string(v) + " survived lifting");
    lifted.push_back(v);
  }
  return VertexSet(std::move(lifted));
}

VertexSet extend_to_maximal(const Graph& g, const VertexSet& s) {
  std::vector<char> blocked(g.order(), 0);
  std::vector<Vertex> out(s.begin(), s.end());
  for (Vertex v : s) {
    blocked[v] = 1;
    for (Vertex w : g.neighbors(v)) blocked[w] = 1;
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (blocked[v]) continue;
    out.push_back(v);
    blocked[v] = 1;
    for (Vertex w : g.neighbors(v)) blocked[w] = 1;
  }
  return VertexSet(std::move(out));
}

void write_trace(const KernelResult& kr, std::ostream& out) {
  out << "c reduction trace: 0-based working indices\n";
  out << "o " << kr.trace.original_order << ' ' << kr.trace.working_order << '\n';
  for (std::size_t k = 0; k < kr.name_map.size(); ++k) out << "m " << k << ' ' << kr.name_map[k] << '\n';
  for (const auto& entry : kr.trace.entries) {
    std::visit(Overloaded{
                   [&](const Include& e) { out << "INC " << e.v << '\n'; },
                   [&](const Exclude& e) { out << "EXC " << e.v << '\n'; },
                   [&](const FoldUndo& e) {
                     out << "FOLD " << e.placeholder << ' ' << e.center << ' ' << e.left << ' ' << e.right << '\n';
                   },
                   [&](const TwinUndo& e) {
                     out << "TWIN " << e.placeholder << ' ' << e.u << ' ' << e.v << ' ' << e.neighborhood[0] << ' '
                         << e.neighborhood[1] << ' ' << e.neighborhood[2] << '\n';
                   },
                   [&](const PathUndo& e) {
                     out << "PATH " << to_string(e.path_case) << ' ' << e.v << ' ' << e.w << ' ' << e.path.size();
                     for (Vertex p : e.path) out << ' ' << p;
                     out << '\n';
                   },
               },
               entry);
  }
}

KernelResult parse_trace(const std::string& text, Graph kernel) {
  KernelResult kr;
  kr.kernel = std::move(kernel);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_order = false;
  auto vertex = [&](std::istringstream& fields) {
    long long v = -1;
    if (!(fields >> v) || v < 0) throw ParseError(line_no, "expected a vertex index");
    if (have_order && static_cast<std::size_t>(v) >= kr.trace.working_order) {
      throw ParseError(line_no, "vertex " + std::to_string(v) + " outside the working range");
    }
    return static_cast<Vertex>(v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag == "c") continue;
    if (tag == "o") {
      long long n = -1;
      long long w = -1;
      if (!(fields >> n >> w) || n < 0 || w < n) throw ParseError(line_no, "expected 'o <original> <working>'");
      kr.trace.original_order = static_cast<std::size_t>(n);
      kr.trace.working_order = static_cast<std::size_t>(w);
      have_order = true;
      continue;
    }
    if (!have_order) throw ParseError(line_no, "trace entry before the 'o' line");
    if (tag == "m") {
      const Vertex k = vertex(fields);
      const Vertex x = vertex(fields);
      if (k != kr.name_map.size()) throw ParseError(line_no, "name map lines must be in kernel order");
      kr.name_map.push_back(x);
    } else if (tag == "INC") {
      kr.trace.entries.push_back(Include{vertex(fields)});
    } else if (tag == "EXC") {
      kr.trace.entries.push_back(Exclude{vertex(fields)});
    } else if (tag == "FOLD") {
      FoldUndo e{};
      e.placeholder = vertex(fields);
      e.center = vertex(fields);
      e.left = vertex(fields);
      e.right = vertex(fields);
      kr.trace.entries.push_back(e);
    } else if (tag == "TWIN") {
      TwinUndo e{};
      e.placeholder = vertex(fields);
      e.u = vertex(fields);
      e.v = vertex(fields);
      for (auto& y : e.neighborhood) y = vertex(fields);
      kr.trace.entries.push_back(e);
    } else if (tag == "PATH") {
      std::string which;
      fields >> which;
      PathUndo e{parse_path_case(which, line_no), {}, 0, 0};
      e.v = vertex(fields);
      e.w = vertex(fields);
      long long l = -1;
      if (!(fields >> l) || l < 1) throw ParseError(line_no, "expected a path length");
      for (long long i = 0; i < l; ++i) e.path.push_back(vertex(fields));
      kr.trace.entries.push_back(std::move(e));
    } else {
      throw ParseError(line_no, "unknown trace entry '" + tag + "'");
    }
  }
  if (!have_order) throw ParseError(line_no, "missing 'o' line");
  if (kr.name_map.size() != kr.kernel.order()) {
    throw ParseError(line_no, "name map has " + std::to_string(kr.name_map.size()) + " entries for a kernel of order " +
                                  std::to_string(kr.kernel.order()));
  }
  kr.forced_count = kr.trace.forced_count();
  return kr;
}

}  // namespace mcs::kernel
