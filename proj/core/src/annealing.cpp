#include "mcs/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mcs/error.hpp"

namespace mcs::annealing {

using dynamics::CliqueRun;
using dynamics::PayoffMatrix;
using dynamics::SimplexVector;

double density(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 2) throw ParameterError("density needs at least two vertices");
  return static_cast<double>(g.size()) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double gamma_hat(std::size_t m, double q, std::size_t n, double delta) {
  if (m < 1 || m > n) throw ParameterError("gamma_hat needs 1 <= m <= n");
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("gamma_hat needs q in [0,1]");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("gamma_hat needs delta in (0,1)");
  const double md = static_cast<double>(m);
  const double nu = (static_cast<double>(n) - md) / 2.0;
  return 1.0 - (1.0 - q) * md - std::sqrt(md * q * (1.0 - q) * std::pow(delta, nu));
}

std::size_t edge_clique_bound(std::size_t edges, BoundMode mode) {
  if (edges == 0) return 1;
  const double root = std::sqrt(8.0 * static_cast<double>(edges) + 1.0);
  if (mode == BoundMode::QuarterRoot) return static_cast<std::size_t>(std::floor(root / 4.0 + 0.5));
  auto c = static_cast<std::size_t>(std::floor((1.0 + root) / 2.0));
  // Correct the floating estimate so that c(c-1)/2 <= |E| < (c+1)c/2.
  while (c > 1 && c * (c - 1) / 2 > edges) --c;
  while ((c + 1) * c / 2 <= edges) ++c;
  return c;
}

std::size_t clique_upper_bound(const AssociationGraph& assoc, BoundMode mode) {
  if (assoc.graph.size() == 0) return 1;
  return std::min({edge_clique_bound(assoc.graph.size(), mode), assoc.n1, assoc.n2});
}

AnnealingSchedule build_schedule(const Graph& g, std::size_t size_cap, double delta, BoundMode mode) {
  if (g.order() < 2) throw ParameterError("annealing schedule needs at least two vertices");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0,1)");
  AnnealingSchedule s;
  s.q = density(g);
  s.n = g.order();
  s.delta = delta;
  s.c_sup = g.size() == 0 ? 1 : std::min({edge_clique_bound(g.size(), mode), size_cap, g.order()});
  for (std::size_t m = s.c_sup; m >= 2; --m) {
    const double upper = gamma_hat(m, s.q, s.n, delta);
    const double lower = gamma_hat(m - 1, s.q, s.n, delta);
    s.steps.push_back({m, upper, (lower + upper) / 2.0});
  }
  return s;
}

AnnealingSchedule build_schedule(const AssociationGraph& assoc, double delta, BoundMode mode) {
  return build_schedule(assoc.graph, std::min(assoc.n1, assoc.n2), delta, mode);
}

void write_schedule_csv(const AnnealingSchedule& schedule, std::ostream& out) {
  out << "m,gamma_hat_m,alpha\n";
  const auto precision = out.precision(17);
  for (const auto& step : schedule.steps) out << step.m << ',' << step.gamma_hat_m << ',' << step.alpha << '\n';
  out.precision(precision);
}

PayoffMatrix shifted_payoff(const Graph& g, double alpha) {
  const std::size_t n = g.order();
  const double lift = alpha > 0.0 ? alpha : 0.0;
  std::vector<double> w(n * n, lift);
  for (Vertex u = 0; u < n; ++u) {
    w[u * n + u] = lift - alpha;
    for (Vertex v : g.neighbors(u)) w[u * n + v] = 1.0 + lift;
  }
  return PayoffMatrix(n, std::move(w), dynamics::PayoffKind::Shifted, lift);
}

dynamics::PayoffMatrix shifted_payoff(const AssociationGraph& assoc, double alpha) {
  const double lift = alpha > 0.0 ? alpha : 0.0;
  return PayoffMatrix::association(assoc, -alpha, lift, dynamics::PayoffKind::Shifted, lift);
}

double compute_gamma(const Graph& g, const VertexSet& c) {
  if (c.empty()) throw ParameterError("compute_gamma needs a non-empty set");
  std::size_t best = 0;
  for (Vertex i = 0; i < g.order(); ++i) {
    if (c.contains(i)) continue;
    std::size_t inside = 0;
    for (Vertex j : g.neighbors(i)) inside += c.contains(j) ? 1 : 0;
    best = std::max(best, inside);
  }
  return static_cast<double>(best) - static_cast<double>(c.size()) + 1.0;
}

namespace {

double max_component(const SimplexVector& x) {
  const auto c = x.components();
  return *std::max_element(c.begin(), c.end());
}

// `payoff(alpha)` yields the matrix of shifted_payoff for the graph g.
template <typename Payoff>
CliqueRun annealed_run(const Graph& g, std::size_t size_cap, std::uint64_t seed, const AIHOptions& options,
                       Payoff payoff, const PayoffMatrix& bomze) {
  const std::size_t n = g.order();
  CliqueRun run;
  if (n == 1) {
    run.clique = VertexSet{0};
    return run;
  }

  const dynamics::RDOptions rd{options.tol, options.max_iters, nullptr};
  std::mt19937_64 rng(seed);
  auto keep_best = [&](const SimplexVector& x) {
    auto extraction = dynamics::extract_clique(g, x);
    if (extraction.clique.size() > run.clique.size()) run.clique = extraction.clique;
    return extraction.characteristic;
  };

  const auto schedule = build_schedule(g, size_cap, options.delta, options.bound);
  SimplexVector x = dynamics::barycenter(n);
  for (const auto& step : schedule.steps) {
    const auto w = payoff(-step.alpha);
    try {
      const auto outcome = dynamics::run_rd(w, x, rd);
      run.iterations += outcome.iterations;
      x = outcome.final;
    } catch (const DegenerateStateError&) {
      // Only reachable at alpha == 0 from a vertex of the simplex.
      x = dynamics::inject_noise(x, options.noise_sigma, rng);
    }
    ++run.stages;
    keep_best(x);
    if (max_component(x) > 1.0 - options.collapse_margin) x = dynamics::inject_noise(x, options.noise_sigma, rng);
  }

  for (std::size_t attempt = 0; attempt <= options.max_restarts; ++attempt) {
    const auto polish = dynamics::run_rd(bomze, x, rd);
    run.iterations += polish.iterations;
    ++run.stages;
    if (keep_best(polish.final)) break;
    x = dynamics::inject_noise(polish.final, options.noise_sigma, rng);
  }
  return run;
}

}  // namespace

CliqueRun run_aih(const Graph& g, std::size_t size_cap, std::uint64_t seed, const AIHOptions& options) {
  if (g.order() == 0) throw ParameterError("run_aih needs a non-empty graph");
  return annealed_run(
      g, size_cap, seed, options, [&g](double alpha) { return shifted_payoff(g, alpha); }, PayoffMatrix::bomze(g));
}

CliqueRun run_aih(const AssociationGraph& assoc, std::uint64_t seed, const AIHOptions& options) {
  return annealed_run(
      assoc.graph, std::min(assoc.n1, assoc.n2), seed, options,
      [&assoc](double alpha) { return shifted_payoff(assoc, alpha); }, PayoffMatrix::bomze(assoc));
}

}  // namespace mcs::annealing
