#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "mcs/graph.hpp"

// Discrete-time replicator dynamics on the standard simplex and the
// Motzkin-Straus / Bomze machinery for reading cliques off its fixed points.
namespace mcs::dynamics {

/// A point of the standard simplex: non-negative components summing to one.
class SimplexVector {
 public:
  static constexpr double kSumTolerance = 1e-9;

  SimplexVector() = default;
  /// Validates non-negativity and unit sum; throws ParameterError otherwise.
  explicit SimplexVector(std::vector<double> components);

  /// Wraps components that the caller guarantees to lie on the simplex.
  static SimplexVector trusted(std::vector<double> components);

  std::size_t size() const noexcept { return x_.size(); }
  double operator[](std::size_t i) const { return x_[i]; }
  std::span<const double> components() const noexcept { return x_; }

 private:
  std::vector<double> x_;
};

enum class PayoffKind { General, Adjacency, Bomze, Shifted };

struct FactorForm;

/// Symmetric, entrywise non-negative payoff matrix W (dense, row-major, or
/// factored over the two graphs of an association graph).
///
/// `offset` is the constant that the non-negativity repair added to the
/// quadratic form on the simplex; objective() subtracts it back out.
class PayoffMatrix {
 public:
  /// Throws ParameterError unless `entries` is n*n, symmetric to 1e-12 and non-negative.
  PayoffMatrix(std::size_t n, std::vector<double> entries, PayoffKind kind = PayoffKind::General,
               double offset = 0.0);

  /// A: the adjacency matrix.
  static PayoffMatrix adjacency(const Graph& g);
  /// Bomze regularisation A + I/2.
  static PayoffMatrix bomze(const Graph& g);

  /// A + diagonal I + constant J for an association graph, never stored
  /// densely: W x = A1 X A2 + B1 X B2 + diagonal x + constant sum(x), where X
  /// is x as an n1 x n2 matrix and B is the complement adjacency. One product
  /// costs O(n1 n2 (n1 + n2)). Throws ParameterError unless every entry is non-negative.
  static PayoffMatrix association(const AssociationGraph& assoc, double diagonal, double constant,
                                  PayoffKind kind, double offset = 0.0);
  static PayoffMatrix adjacency(const AssociationGraph& assoc);
  static PayoffMatrix bomze(const AssociationGraph& assoc);

  std::size_t size() const noexcept { return n_; }
  PayoffKind kind() const noexcept { return kind_; }
  double offset() const noexcept { return offset_; }
  bool factored() const noexcept { return factors_ != nullptr; }
  double operator()(std::size_t i, std::size_t j) const;

  /// out = W x.
  void multiply(std::span<const double> x, std::span<double> out) const;

 private:
  PayoffMatrix(std::size_t n, std::shared_ptr<const FactorForm> factors, PayoffKind kind, double offset);

  std::size_t n_;
  std::vector<double> w_;
  std::shared_ptr<const FactorForm> factors_;
  PayoffKind kind_;
  double offset_;
};

enum class RDStatus { Converged, MaxIterations };

struct RDOutcome {
  SimplexVector final;
  std::size_t iterations = 0;
  RDStatus status = RDStatus::MaxIterations;
  double objective = 0.0;
};

struct RDOptions {
  double tol = 1e-6;
  std::size_t max_iters = 1'000'000;
  /// When set, receives CSV rows `iter,objective,delta_norm` (header included).
  std::ostream* trace = nullptr;
};

SimplexVector barycenter(std::size_t n);
SimplexVector characteristic_vector(const VertexSet& c, std::size_t n);

inline constexpr double kSupportThreshold = 1e-4;
VertexSet support(const SimplexVector& x, double threshold = kSupportThreshold);

/// x^T W x minus the matrix offset.
double objective(const PayoffMatrix& w, const SimplexVector& x);

/// One replicator update x_i <- x_i (Wx)_i / x^T W x.
/// Throws DegenerateStateError when x^T W x is not positive.
SimplexVector rd_step(const PayoffMatrix& w, const SimplexVector& x);

/// Iterates rd_step until ||x_t - x_{t-1}||_2 <= tol or max_iters steps.
RDOutcome run_rd(const PayoffMatrix& w, const SimplexVector& x0, const RDOptions& options = {});

/// Adds N(0, sigma^2) to each component, clips at zero and renormalises.
SimplexVector inject_noise(const SimplexVector& x, double sigma, std::mt19937_64& rng);
SimplexVector inject_noise(const SimplexVector& x, double sigma, std::uint64_t seed);

struct Extraction {
  VertexSet clique;
  /// True when the top-k components (k from the Bomze value) form a clique and
  /// carry the whole support, i.e. x is a characteristic vector. False when
  /// mass remains elsewhere or the greedy fallback produced the result.
  bool characteristic = false;
};

/// Reads a clique off a simplex point: k = round(1 / (2 (1 - x^T (A + I/2) x)))
/// and the k largest components, falling back to greedy descent when those
/// do not form a clique.
Extraction extract_clique(const Graph& g, const SimplexVector& x);

struct TwoPhaseOptions {
  double tol = 1e-6;
  std::size_t max_iters = 1'000'000;
  double noise_sigma = 0.01;
  std::size_t max_restarts = 10;
};

struct CliqueRun {
  VertexSet clique;
  std::size_t iterations = 0;
  std::size_t stages = 0;
};

/// Phase one ascends x^T A x from the barycenter, phase two ascends
/// x^T (A + I/2) x from there. A failed extraction is retried from a noisy
/// copy of the phase-two point, keeping the best clique seen.
CliqueRun two_phase_rd(const Graph& g, std::uint64_t seed, const TwoPhaseOptions& options = {});
/// Same run with factored payoff matrices on assoc.graph.
CliqueRun two_phase_rd(const AssociationGraph& assoc, std::uint64_t seed, const TwoPhaseOptions& options = {});

}  // namespace mcs::dynamics
