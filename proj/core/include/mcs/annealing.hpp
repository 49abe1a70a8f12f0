#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mcs/dynamics.hpp"
#include "mcs/graph.hpp"

// Annealed imitation heuristics: replicator runs on A - alpha I with alpha
// swept along the gamma-hat ladder, followed by a Bomze polish.
namespace mcs::annealing {

/// Clique-number bound from the edge count.
///   Safe:          largest c with c(c-1)/2 <= |E|
///   QuarterRoot:   floor(sqrt(8|E|+1)/4 + 1/2), which is not an upper bound
///                  in general (it gives 2 for K5) and is kept for comparison.
enum class BoundMode { Safe, QuarterRoot };

struct ScheduleStep {
  std::size_t m = 0;
  double gamma_hat_m = 0.0;
  double alpha = 0.0;
};

struct AnnealingSchedule {
  double q = 0.0;
  std::size_t n = 0;
  double delta = 0.01;
  std::size_t c_sup = 1;
  /// m = c_sup, c_sup - 1, ..., 2 with alpha = (gamma_hat(m-1) + gamma_hat(m)) / 2.
  std::vector<ScheduleStep> steps;
};

/// |E| / (n (n-1) / 2). Throws ParameterError for n < 2.
double density(const Graph& g);

/// 1 - (1-q) m - sqrt(m q (1-q) delta^nu) with nu = (n - m) / 2.
double gamma_hat(std::size_t m, double q, std::size_t n, double delta);

/// Edge-count bound only (no min with the source graph orders).
std::size_t edge_clique_bound(std::size_t edges, BoundMode mode = BoundMode::Safe);

/// min{edge bound, n1, n2}; 1 for an edgeless association graph.
std::size_t clique_upper_bound(const AssociationGraph& assoc, BoundMode mode = BoundMode::Safe);

/// Schedule for a graph whose clique number is known to be at most `size_cap`.
AnnealingSchedule build_schedule(const Graph& g, std::size_t size_cap, double delta = 0.01,
                                 BoundMode mode = BoundMode::Safe);
AnnealingSchedule build_schedule(const AssociationGraph& assoc, double delta = 0.01,
                                 BoundMode mode = BoundMode::Safe);

/// Writes `m,gamma_hat_m,alpha` rows (header included).
void write_schedule_csv(const AnnealingSchedule& schedule, std::ostream& out);

/// Payoff matrix for x^T (A - alpha I) x. For alpha > 0 the constant alpha J
/// is added to keep entries non-negative; it shifts the form by alpha on the
/// simplex and is recorded as the matrix offset.
dynamics::PayoffMatrix shifted_payoff(const Graph& g, double alpha);
/// The same matrix for assoc.graph in factored form.
dynamics::PayoffMatrix shifted_payoff(const AssociationGraph& assoc, double alpha);

/// max over i outside C of |N(i) cap C|, minus |C|, plus one. The max over an
/// empty outside is taken as 0.
double compute_gamma(const Graph& g, const VertexSet& c);

struct AIHOptions {
  double tol = 1e-6;
  std::size_t max_iters = 1'000'000;
  double delta = 0.01;
  double noise_sigma = 0.01;
  std::size_t max_restarts = 10;
  BoundMode bound = BoundMode::Safe;
  /// Stage-handoff kick fires when the largest component exceeds 1 - this.
  double collapse_margin = 1e-6;
};

dynamics::CliqueRun run_aih(const Graph& g, std::size_t size_cap, std::uint64_t seed, const AIHOptions& options = {});
dynamics::CliqueRun run_aih(const AssociationGraph& assoc, std::uint64_t seed, const AIHOptions& options = {});

}  // namespace mcs::annealing
