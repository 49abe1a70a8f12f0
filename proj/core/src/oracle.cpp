#include "mcs/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mcs/error.hpp"

namespace mcs::oracle {
namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  std::size_t count_and(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }
  Bits and_not(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        f(wi * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

class Deadline {
 public:
  explicit Deadline(long long millis)
      : end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(millis)) {}

  void check() {
    if ((++ticks_ & 1023U) == 0 && std::chrono::steady_clock::now() > end_) {
      throw BudgetError("exact oracle exceeded its time budget");
    }
  }

 private:
  std::chrono::steady_clock::time_point end_;
  std::uint64_t ticks_ = 0;
};

bool better(const std::vector<Vertex>& candidate, const std::vector<Vertex>& best) {
  if (candidate.size() != best.size()) return candidate.size() > best.size();
  return std::lexicographical_compare(candidate.begin(), candidate.end(), best.begin(), best.end());
}

class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, Deadline deadline) : g_(g), n_(g.order()), rows_(n_, Bits(n_)), deadline_(deadline) {
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : g.neighbors(u)) rows_[u].set(v);
    }
  }

  std::vector<Vertex> run() {
    if (n_ == 0) return {};
    const auto order = degeneracy_order();
    Bits earlier(n_);
    for (Vertex v : order) {
      Bits p = rows_[v].and_not(earlier);
      Bits x = rows_[v] & earlier;
      current_.assign(1, v);
      expand(p, x);
      earlier.set(v);
    }
    return best_;
  }

 private:
  std::vector<Vertex> degeneracy_order() const {
    std::vector<std::size_t> deg(n_);
    for (Vertex v = 0; v < n_; ++v) deg[v] = g_.degree(v);
    std::vector<bool> removed(n_, false);
    std::vector<Vertex> order;
    order.reserve(n_);
    for (std::size_t step = 0; step < n_; ++step) {
      Vertex pick = 0;
      std::size_t best = SIZE_MAX;
      for (Vertex v = 0; v < n_; ++v) {
        if (!removed[v] && deg[v] < best) {
          best = deg[v];
          pick = v;
        }
      }
      removed[pick] = true;
      order.push_back(pick);
      for (Vertex w : g_.neighbors(pick)) {
        if (!removed[w]) --deg[w];
      }
    }
    return order;
  }

  void expand(Bits p, Bits x) {
    deadline_.check();
    if (p.none()) {
      if (x.none()) {
        std::vector<Vertex> clique = current_;
        std::sort(clique.begin(), clique.end());
        if (best_.empty() || better(clique, best_)) best_ = std::move(clique);
      }
      return;
    }
    if (current_.size() + p.count() < best_.size()) return;

    // Pivot: the vertex of P or X with the most neighbours in P.
    std::size_t pivot = 0;
    std::size_t pivot_hits = 0;
    bool have_pivot = false;
    auto consider = [&](std::size_t u) {
      const std::size_t hits = rows_[u].count_and(p);
      if (!have_pivot || hits > pivot_hits) {
        pivot = u;
        pivot_hits = hits;
        have_pivot = true;
      }
    };
    p.for_each(consider);
    x.for_each(consider);

    Bits candidates = p.and_not(rows_[pivot]);
    candidates.for_each([&](std::size_t v) {
      current_.push_back(static_cast<Vertex>(v));
      expand(p & rows_[v], x & rows_[v]);
      current_.pop_back();
      p.reset(v);
      x.set(v);
    });
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Bits> rows_;
  Deadline deadline_;
  std::vector<Vertex> current_;
  std::vector<Vertex> best_;
};

}  // namespace

VertexSet max_clique_exact(const Graph& g, const OracleBudget& budget) {
  if (g.order() > budget.max_vertices) {
    throw BudgetError("graph of order " + std::to_string(g.order()) + " exceeds oracle budget of " +
                      std::to_string(budget.max_vertices) + " vertices");
  }
  CliqueSearch search(g, Deadline(budget.max_millis));
  return VertexSet(search.run());
}

VertexSet mis_exact(const Graph& g, const OracleBudget& budget) {
  if (g.order() > budget.max_vertices) {
    throw BudgetError("graph of order " + std::to_string(g.order()) + " exceeds oracle budget of " +
                      std::to_string(budget.max_vertices) + " vertices");
  }
  return max_clique_exact(complement(g), budget);
}

namespace {

class MapSearch {
 public:
  MapSearch(const Graph& g1, const Graph& g2, Deadline deadline)
      : g1_(g1), g2_(g2), used_(g2.order(), false), deadline_(deadline) {}

  std::vector<std::pair<Vertex, Vertex>> run() {
    extend(0);
    return best_;
  }

 private:
  void extend(Vertex i) {
    deadline_.check();
    if (current_.size() + (g1_.order() - i) <= best_.size()) return;
    if (i == g1_.order()) {
      best_ = current_;
      return;
    }
    for (Vertex h = 0; h < g2_.order(); ++h) {
      if (used_[h] || !consistent(i, h)) continue;
      used_[h] = true;
      current_.emplace_back(i, h);
      extend(i + 1);
      current_.pop_back();
      used_[h] = false;
    }
    extend(i + 1);  // leave i unmapped
  }

  bool consistent(Vertex i, Vertex h) const {
    for (const auto& [j, k] : current_) {
      if (g1_.adjacent(i, j) != g2_.adjacent(h, k)) return false;
    }
    return true;
  }

  const Graph& g1_;
  const Graph& g2_;
  std::vector<bool> used_;
  Deadline deadline_;
  std::vector<std::pair<Vertex, Vertex>> current_;
  std::vector<std::pair<Vertex, Vertex>> best_;
};

// Number of injective partial maps from an a-set into a b-set.
double partial_map_count(std::size_t a, std::size_t b) {
  double total = 0.0;
  double choose = 1.0;  // C(a, k)
  double falling = 1.0;  // b (b-1) ... (b-k+1)
  for (std::size_t k = 0; k <= std::min(a, b); ++k) {
    total += choose * falling;
    choose = choose * static_cast<double>(a - k) / static_cast<double>(k + 1);
    falling *= static_cast<double>(b - k);
  }
  return total;
}

}  // namespace

MCSResult mcs_brute_force(const Graph& g1, const Graph& g2, const OracleBudget& budget) {
  constexpr double kMaxMaps = 5e7;
  if (partial_map_count(g1.order(), g2.order()) > kMaxMaps) {
    throw BudgetError("injective map enumeration for orders " + std::to_string(g1.order()) + " and " +
                      std::to_string(g2.order()) + " exceeds the oracle budget");
  }
  MapSearch search(g1, g2, Deadline(budget.max_millis));
  MCSResult result;
  result.mapping = search.run();
  result.method = Method::Exact;
  return result;
}

bool is_clique(const Graph& g, const VertexSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] >= g.order()) return false;
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (!g.adjacent(s[a], s[b])) return false;
    }
  }
  return true;
}

bool is_independent(const Graph& g, const VertexSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] >= g.order()) return false;
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (g.adjacent(s[a], s[b])) return false;
    }
  }
  return true;
}

bool verify_common_subgraph(const Graph& g1, const Graph& g2, std::span<const std::pair<Vertex, Vertex>> mapping) {
  std::vector<bool> used1(g1.order(), false);
  std::vector<bool> used2(g2.order(), false);
  for (const auto& [i, h] : mapping) {
    if (i >= g1.order() || h >= g2.order() || used1[i] || used2[h]) return false;
    used1[i] = true;
    used2[h] = true;
  }
  for (std::size_t a = 0; a < mapping.size(); ++a) {
    for (std::size_t b = a + 1; b < mapping.size(); ++b) {
      if (g1.adjacent(mapping[a].first, mapping[b].first) != g2.adjacent(mapping[a].second, mapping[b].second)) {
        return false;
      }
    }
  }
  return true;
}

double largest_eigenvalue(const Graph& g, const VertexSet& restriction) {
  if (restriction.empty()) throw ParameterError("largest_eigenvalue needs a non-empty restriction");
  const std::size_t k = restriction.size();
  std::vector<std::vector<std::size_t>> local(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b && g.adjacent(restriction[a], restriction[b])) local[a].push_back(b);
    }
  }
  auto multiply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t a = 0; a < k; ++a) {
      double s = 0.0;
      for (std::size_t b : local[a]) s += x[b];
      y[a] = s;
    }
  };
  auto normalize = [](std::vector<double>& x) {
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  };

  // Iterating with A + I keeps the Perron root strictly dominant even for
  // bipartite blocks, where +lambda and -lambda tie in modulus.
  std::vector<double> x(k, 1.0);
  std::vector<double> ax(k);
  normalize(x);
  double rayleigh = 0.0;
  for (int step = 0; step < 10'000; ++step) {
    multiply(x, ax);
    double next = 0.0;
    for (std::size_t a = 0; a < k; ++a) next += x[a] * ax[a];
    for (std::size_t a = 0; a < k; ++a) x[a] += ax[a];
    normalize(x);
    const bool converged = step > 0 && std::abs(next - rayleigh) <= 1e-12 * std::max(1.0, std::abs(next));
    rayleigh = next;
    if (converged) break;
  }
  return rayleigh;
}

}  // namespace mcs::oracle
