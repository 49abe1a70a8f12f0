#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mcs/graph.hpp"
#include "mcs/pipeline.hpp"
#include "mcs/result.hpp"

// Batch experiments: random-pair MCS sizes per method, and kernelization
// accuracy on isomorphic pairs. CSV and SVG output.
namespace mcs::experiment {

enum class Kind { Table2, Kernel };

struct ExperimentConfig {
  Kind kind = Kind::Table2;
  std::size_t n = 20;
  std::vector<double> densities{0.3, 0.5, 0.7};
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  std::vector<Method> methods{Method::RD, Method::AIH};
  /// Dynamics settings for Table2 runs; method and seed are filled per row.
  pipeline::SolveConfig solve;
  /// When false wall_ms is left empty so that output is byte-reproducible.
  bool record_wall_time = true;
  /// Called with every verified mapping before its row is emitted. Kernel
  /// experiment results carry method KernelRD and empty stats.
  std::function<void(const Graph&, const Graph&, const MCSResult&)> on_result;

  /// Throws ParameterError on trials == 0, n == 0 or a density outside [0,1].
  void validate() const;
};

struct ResultRow {
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  std::size_t size = 0;
  std::optional<double> accuracy;
  std::size_t iterations = 0;
  std::optional<std::size_t> kernel_size;
  std::optional<double> wall_ms;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// splitmix64 over (master, p index, trial index).
std::uint64_t trial_seed(std::uint64_t master, std::size_t p_index, std::size_t trial_index);

/// Rows in (p, trial, method) order. Each trial draws two independent
/// ER(n, p) graphs and solves the pair with every configured method.
std::vector<ResultRow> run_table2(const ExperimentConfig& cfg);

/// Rows in (p, trial) order. Each trial pairs ER(n, p) with a permuted copy
/// and reduces the complement of their association graph with inexact
/// reductions on. accuracy = |lifted independent set| / n.
std::vector<ResultRow> run_kernel_experiment(const ExperimentConfig& cfg);

inline constexpr const char* kCsvHeader = "p,seed,method,size,accuracy,iterations,kernel_size,wall_ms";

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
/// Throws IoError when the file cannot be written.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
/// Throws ParseError (with line number) on malformed input.
std::vector<ResultRow> parse_csv(const std::string& text);

struct SeriesPoint {
  std::string method;
  double p = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  std::size_t count = 0;
};

/// Mean and standard deviation of accuracy (when every row of a method has
/// one) or size, per (method, p). Methods in first-appearance order, p ascending.
std::vector<SeriesPoint> aggregate(const std::vector<ResultRow>& rows);

/// Static SVG line chart with one polyline per method and stddev error bars.
/// Throws ParameterError on empty input.
std::string render_svg(const std::vector<ResultRow>& rows);
/// Reads a CSV file and writes the SVG chart.
void emit_plot(const std::string& csv_path, const std::string& svg_path);

}  // namespace mcs::experiment
