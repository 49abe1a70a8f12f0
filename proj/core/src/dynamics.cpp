#include "mcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "mcs/error.hpp"

namespace mcs::dynamics {
namespace {

// Components this small are flushed to zero so that long runs do not crawl
// through subnormal arithmetic.
constexpr double kFlushBelow = 1e-250;

}  // namespace

SimplexVector::SimplexVector(std::vector<double> components) : x_(std::move(components)) {
  double sum = 0.0;
  for (double v : x_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("simplex components must be finite and non-negative");
    sum += v;
  }
  if (x_.empty() || std::abs(sum - 1.0) > kSumTolerance) throw ParameterError("simplex components must sum to 1");
}

SimplexVector SimplexVector::trusted(std::vector<double> components) {
  SimplexVector s;
  s.x_ = std::move(components);
  return s;
}

PayoffMatrix::PayoffMatrix(std::size_t n, std::vector<double> entries, PayoffKind kind, double offset)
    : n_(n), w_(std::move(entries)), kind_(kind), offset_(offset) {
  if (w_.size() != n * n) throw ParameterError("payoff matrix must have n*n entries");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = w_[i * n + j];
      if (!(a >= 0.0) || !std::isfinite(a)) throw ParameterError("payoff entries must be finite and non-negative");
      if (j > i && std::abs(a - w_[j * n + i]) > 1e-12) throw ParameterError("payoff matrix must be symmetric");
    }
  }
}

struct FactorForm {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  // 0/1 adjacency and complement adjacency (zero diagonal), row-major.
  std::vector<double> a1, b1, a2, b2;
  double diagonal = 0.0;
  double constant = 0.0;
};

namespace {

void fill_factor(const Graph& g, std::vector<double>& a, std::vector<double>& b) {
  const std::size_t n = g.order();
  a.assign(n * n, 0.0);
  b.assign(n * n, 0.0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      (g.adjacent(u, v) ? a : b)[u * n + v] = 1.0;
    }
  }
}

// out += L X R for square 0/1 L (n1 x n1) and R (n2 x n2); t is scratch.
void add_sandwich(const FactorForm& f, const std::vector<double>& l, const std::vector<double>& r,
                  std::span<const double> x, std::span<double> out, std::vector<double>& t) {
  const std::size_t n1 = f.n1;
  const std::size_t n2 = f.n2;
  t.assign(n1 * n2, 0.0);
  for (std::size_t j = 0; j < n1; ++j) {
    double* tj = t.data() + j * n2;
    for (std::size_t k = 0; k < n2; ++k) {
      const double xjk = x[j * n2 + k];
      if (xjk == 0.0) continue;
      const double* rk = r.data() + k * n2;
      for (std::size_t h = 0; h < n2; ++h) tj[h] += xjk * rk[h];
    }
  }
  for (std::size_t i = 0; i < n1; ++i) {
    double* oi = out.data() + i * n2;
    for (std::size_t j = 0; j < n1; ++j) {
      if (l[i * n1 + j] == 0.0) continue;
      const double* tj = t.data() + j * n2;
      for (std::size_t h = 0; h < n2; ++h) oi[h] += tj[h];
    }
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(std::size_t n, std::shared_ptr<const FactorForm> factors, PayoffKind kind, double offset)
    : n_(n), factors_(std::move(factors)), kind_(kind), offset_(offset) {}

PayoffMatrix PayoffMatrix::association(const AssociationGraph& assoc, double diagonal, double constant,
                                       PayoffKind kind, double offset) {
  if (!(constant >= 0.0) || !(diagonal + constant >= 0.0) || !std::isfinite(diagonal) || !std::isfinite(constant)) {
    throw ParameterError("payoff entries must be finite and non-negative");
  }
  if (assoc.g1.order() != assoc.n1 || assoc.g2.order() != assoc.n2) {
    throw ParameterError("association graph does not carry its factor graphs");
  }
  auto f = std::make_shared<FactorForm>();
  f->n1 = assoc.n1;
  f->n2 = assoc.n2;
  fill_factor(assoc.g1, f->a1, f->b1);
  fill_factor(assoc.g2, f->a2, f->b2);
  f->diagonal = diagonal;
  f->constant = constant;
  return PayoffMatrix(assoc.n1 * assoc.n2, std::move(f), kind, offset);
}

PayoffMatrix PayoffMatrix::adjacency(const AssociationGraph& assoc) {
  return association(assoc, 0.0, 0.0, PayoffKind::Adjacency);
}

PayoffMatrix PayoffMatrix::bomze(const AssociationGraph& assoc) {
  return association(assoc, 0.5, 0.0, PayoffKind::Bomze);
}

double PayoffMatrix::operator()(std::size_t i, std::size_t j) const {
  if (!factors_) return w_[i * n_ + j];
  const FactorForm& f = *factors_;
  if (i == j) return f.diagonal + f.constant;
  const std::size_t a = i / f.n2, h = i % f.n2;
  const std::size_t b = j / f.n2, k = j % f.n2;
  const double edge = f.a1[a * f.n1 + b] * f.a2[h * f.n2 + k] + f.b1[a * f.n1 + b] * f.b2[h * f.n2 + k];
  return edge + f.constant;
}

PayoffMatrix PayoffMatrix::adjacency(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<double> w(n * n, 0.0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) w[u * n + v] = 1.0;
  }
  return PayoffMatrix(n, std::move(w), PayoffKind::Adjacency);
}

PayoffMatrix PayoffMatrix::bomze(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<double> w(n * n, 0.0);
  for (Vertex u = 0; u < n; ++u) {
    w[u * n + u] = 0.5;
    for (Vertex v : g.neighbors(u)) w[u * n + v] = 1.0;
  }
  return PayoffMatrix(n, std::move(w), PayoffKind::Bomze);
}

void PayoffMatrix::multiply(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (factors_) {
    const FactorForm& f = *factors_;
    std::vector<double> t;
    add_sandwich(f, f.a1, f.a2, x, out, t);
    add_sandwich(f, f.b1, f.b2, x, out, t);
    double sum = 0.0;
    for (double v : x) sum += v;
    for (std::size_t i = 0; i < n_; ++i) out[i] += f.diagonal * x[i] + f.constant * sum;
    return;
  }
  for (std::size_t j = 0; j < n_; ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    const double* col = w_.data() + j * n_;  // symmetric: column j == row j
    for (std::size_t i = 0; i < n_; ++i) out[i] += xj * col[i];
  }
}

SimplexVector barycenter(std::size_t n) {
  if (n == 0) throw ParameterError("barycenter needs n >= 1");
  return SimplexVector::trusted(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SimplexVector characteristic_vector(const VertexSet& c, std::size_t n) {
  if (c.empty()) throw ParameterError("characteristic vector of an empty set");
  std::vector<double> x(n, 0.0);
  const double share = 1.0 / static_cast<double>(c.size());
  for (Vertex v : c) {
    if (v >= n) throw ParameterError("vertex " + std::to_string(v) + " out of range");
    x[v] = share;
  }
  return SimplexVector::trusted(std::move(x));
}

VertexSet support(const SimplexVector& x, double threshold) {
  std::vector<Vertex> s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > threshold) s.push_back(static_cast<Vertex>(i));
  }
  return VertexSet(std::move(s));
}

namespace {

double quadratic_form(const PayoffMatrix& w, std::span<const double> x, std::vector<double>& scratch) {
  scratch.resize(w.size());
  w.multiply(x, scratch);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += x[i] * scratch[i];
  return total;
}

// One replicator update from x into next; returns x^T W x at x.
double step_into(const PayoffMatrix& w, std::span<const double> x, std::vector<double>& payoff,
                 std::vector<double>& next) {
  const std::size_t n = w.size();
  payoff.resize(n);
  next.resize(n);
  w.multiply(x, payoff);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += x[i] * payoff[i];
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw DegenerateStateError("replicator step has non-positive mean payoff");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i] * payoff[i] / mean;
    next[i] = v < kFlushBelow ? 0.0 : v;
  }
  return mean;
}

}  // namespace

double objective(const PayoffMatrix& w, const SimplexVector& x) {
  if (w.size() != x.size()) throw ParameterError("payoff matrix and vector dimensions differ");
  std::vector<double> scratch;
  return quadratic_form(w, x.components(), scratch) - w.offset();
}

SimplexVector rd_step(const PayoffMatrix& w, const SimplexVector& x) {
  if (w.size() != x.size()) throw ParameterError("payoff matrix and vector dimensions differ");
  std::vector<double> payoff;
  std::vector<double> next;
  step_into(w, x.components(), payoff, next);
  return SimplexVector::trusted(std::move(next));
}

RDOutcome run_rd(const PayoffMatrix& w, const SimplexVector& x0, const RDOptions& options) {
  if (w.size() != x0.size()) throw ParameterError("payoff matrix and vector dimensions differ");
  std::vector<double> x(x0.components().begin(), x0.components().end());
  std::vector<double> next;
  std::vector<double> payoff;
  if (options.trace != nullptr) *options.trace << "iter,objective,delta_norm\n";

  RDOutcome outcome;
  outcome.status = RDStatus::MaxIterations;
  while (outcome.iterations < options.max_iters) {
    step_into(w, x, payoff, next);
    ++outcome.iterations;
    double delta = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = next[i] - x[i];
      delta += d * d;
    }
    delta = std::sqrt(delta);
    x.swap(next);
    if (options.trace != nullptr) {
      std::vector<double> scratch;
      *options.trace << outcome.iterations << ',' << quadratic_form(w, x, scratch) - w.offset() << ',' << delta
                     << '\n';
    }
    if (delta <= options.tol) {
      outcome.status = RDStatus::Converged;
      break;
    }
  }
  outcome.objective = quadratic_form(w, x, payoff) - w.offset();
  outcome.final = SimplexVector::trusted(std::move(x));
  return outcome;
}

SimplexVector inject_noise(const SimplexVector& x, double sigma, std::mt19937_64& rng) {
  if (!(sigma > 0.0)) throw ParameterError("noise sigma must be positive");
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<double> y(x.size());
  for (int attempt = 0; attempt < 10; ++attempt) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = std::max(0.0, x[i] + gauss(rng));
      sum += y[i];
    }
    if (sum > 0.0) {
      for (double& v : y) v /= sum;
      return SimplexVector::trusted(std::move(y));
    }
  }
  throw DegenerateStateError("noise injection clipped every component to zero");
}

SimplexVector inject_noise(const SimplexVector& x, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return inject_noise(x, sigma, rng);
}

Extraction extract_clique(const Graph& g, const SimplexVector& x) {
  const std::size_t n = g.order();
  if (x.size() != n) throw ParameterError("vector dimension does not match graph order");
  double bomze = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i])) throw NumericError("non-finite simplex component");
    bomze += 0.5 * x[i] * x[i];
  }
  for (const auto& [u, v] : g.edges()) bomze += 2.0 * x[u] * x[v];

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return x[a] > x[b]; });

  // f(x^C) = 1 - 1/(2|C|) for the Bomze objective.
  const double gap = std::max(1.0 - bomze, 1e-12);
  const double estimate = std::round(1.0 / (2.0 * gap));
  const std::size_t k = static_cast<std::size_t>(std::clamp(estimate, 1.0, static_cast<double>(n)));

  VertexSet top(std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)));
  bool is_clique = true;
  for (std::size_t a = 0; a < top.size() && is_clique; ++a) {
    for (std::size_t b = a + 1; b < top.size(); ++b) {
      if (!g.adjacent(top[a], top[b])) {
        is_clique = false;
        break;
      }
    }
  }
  if (is_clique) {
    // Characteristic form also needs the remaining mass to be negligible.
    const bool exact = support(x) == top;
    return {std::move(top), exact};
  }

  std::vector<Vertex> chosen;
  for (Vertex v : order) {
    if (std::all_of(chosen.begin(), chosen.end(), [&](Vertex c) { return g.adjacent(v, c); })) chosen.push_back(v);
  }
  return {VertexSet(std::move(chosen)), false};
}

namespace {

CliqueRun two_phase(const Graph& g, const PayoffMatrix& adjacency, const PayoffMatrix& bomze, std::uint64_t seed,
                    const TwoPhaseOptions& options) {
  const std::size_t n = g.order();
  if (n == 0) throw ParameterError("two_phase_rd needs a non-empty graph");
  CliqueRun run;
  const RDOptions rd{options.tol, options.max_iters, nullptr};

  SimplexVector x = barycenter(n);
  if (g.size() > 0) {
    const auto phase_one = run_rd(adjacency, x, rd);
    run.iterations += phase_one.iterations;
    ++run.stages;
    x = phase_one.final;
  }

  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt <= options.max_restarts; ++attempt) {
    const auto phase_two = run_rd(bomze, x, rd);
    run.iterations += phase_two.iterations;
    ++run.stages;
    auto extraction = extract_clique(g, phase_two.final);
    if (extraction.clique.size() > run.clique.size()) run.clique = extraction.clique;
    if (extraction.characteristic) break;
    x = inject_noise(phase_two.final, options.noise_sigma, rng);
  }
  return run;
}

}  // namespace

CliqueRun two_phase_rd(const Graph& g, std::uint64_t seed, const TwoPhaseOptions& options) {
  if (g.order() == 0) throw ParameterError("two_phase_rd needs a non-empty graph");
  return two_phase(g, PayoffMatrix::adjacency(g), PayoffMatrix::bomze(g), seed, options);
}

CliqueRun two_phase_rd(const AssociationGraph& assoc, std::uint64_t seed, const TwoPhaseOptions& options) {
  return two_phase(assoc.graph, PayoffMatrix::adjacency(assoc), PayoffMatrix::bomze(assoc), seed, options);
}

}  // namespace mcs::dynamics
