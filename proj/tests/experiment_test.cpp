#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mcs/error.hpp"
#include "mcs/experiment.hpp"
#include "mcs/oracle.hpp"

namespace mcs::experiment {
namespace {

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  emit_csv(rows, out);
  return out.str();
}

ExperimentConfig small_table2() {
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.densities = {0.3, 0.6};
  cfg.trials = 3;
  cfg.seed = 11;
  cfg.record_wall_time = false;
  return cfg;
}

TEST(Config, Validates) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = {};
  cfg.densities = {0.5, 1.5};
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = {};
  cfg.n = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(TrialSeed, DistinctAndStable) {
  EXPECT_EQ(trial_seed(1, 0, 0), trial_seed(1, 0, 0));
  EXPECT_NE(trial_seed(1, 0, 1), trial_seed(1, 1, 0));
  EXPECT_NE(trial_seed(1, 0, 0), trial_seed(2, 0, 0));
}

TEST(Csv, TwoRows) {
  std::vector<ResultRow> rows(2);
  rows[0] = {0.5, 7, "rd", 9, std::nullopt, 120, std::nullopt, 1.5};
  rows[1] = {0.5, 7, "reduce", 38, 0.95, 14, 22, std::nullopt};
  const std::string text = csv_of(rows);
  EXPECT_EQ(text, std::string(kCsvHeader) + "\n0.5,7,rd,9,,120,,1.500\n0.5,7,reduce,38,0.95,14,22,\n");
  EXPECT_EQ(parse_csv(text), rows);
}

TEST(Csv, ParseErrors) {
  EXPECT_THROW(parse_csv(""), ParseError);
  EXPECT_THROW(parse_csv("p,seed\n"), ParseError);
  try {
    parse_csv(std::string(kCsvHeader) + "\n0.5,1,rd,3,,1,,\n0.5,1,rd\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\nx,1,rd,3,,1,,\n"), ParseError);
}

TEST(Csv, UnwritablePath) { EXPECT_THROW(emit_csv({}, "/nonexistent/dir/out.csv"), IoError); }

TEST(Table2, RowOrderAndValidity) {
  auto cfg = small_table2();
  std::size_t verified = 0;
  cfg.on_result = [&](const Graph& g1, const Graph& g2, const MCSResult& r) {
    EXPECT_TRUE(oracle::verify_common_subgraph(g1, g2, r.mapping));
    ++verified;
  };
  const auto rows = run_table2(cfg);
  ASSERT_EQ(rows.size(), 2u * 3u * 2u);
  EXPECT_EQ(verified, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].method, i % 2 == 0 ? "rd" : "aih");
    EXPECT_EQ(rows[i].p, i < 6 ? 0.3 : 0.6);
    EXPECT_GE(rows[i].size, 1u);
    EXPECT_FALSE(rows[i].wall_ms.has_value());
  }
}

TEST(Table2, ByteIdenticalRepeat) {
  const auto cfg = small_table2();
  EXPECT_EQ(csv_of(run_table2(cfg)), csv_of(run_table2(cfg)));
}

TEST(KernelExperiment, AccuracyAgainstOracle) {
  ExperimentConfig cfg;
  cfg.kind = Kind::Kernel;
  cfg.n = 6;
  cfg.densities = {0.2, 0.5, 0.8};
  cfg.trials = 3;
  cfg.record_wall_time = false;
  std::vector<std::size_t> sizes;
  cfg.on_result = [&](const Graph& g1, const Graph& g2, const MCSResult& r) {
    EXPECT_TRUE(oracle::verify_common_subgraph(g1, g2, r.mapping));
    // Isomorphic pair: the optimum is the whole graph.
    EXPECT_EQ(oracle::mcs_brute_force(g1, g2).size(), 6u);
    sizes.push_back(r.size());
  };
  const auto rows = run_kernel_experiment(cfg);
  ASSERT_EQ(rows.size(), 9u);
  ASSERT_EQ(sizes.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].method, "reduce");
    EXPECT_EQ(rows[i].size, sizes[i]);
    ASSERT_TRUE(rows[i].accuracy.has_value());
    EXPECT_DOUBLE_EQ(*rows[i].accuracy, static_cast<double>(sizes[i]) / 6.0);
    EXPECT_LE(*rows[i].accuracy, 1.0);
    EXPECT_TRUE(rows[i].kernel_size.has_value());
  }
}

TEST(Aggregate, MatchesRecomputation) {
  const auto rows = run_table2(small_table2());
  const auto parsed = parse_csv(csv_of(rows));
  std::map<std::pair<std::string, double>, std::vector<double>> groups;
  for (const auto& r : parsed) groups[{r.method, r.p}].push_back(static_cast<double>(r.size));
  const auto points = aggregate(parsed);
  ASSERT_EQ(points.size(), groups.size());
  for (const auto& pt : points) {
    const auto& xs = groups.at({pt.method, pt.p});
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    EXPECT_NEAR(pt.mean, mean, 1e-12);
    EXPECT_NEAR(pt.stddev, std::sqrt(var), 1e-12);
    EXPECT_EQ(pt.count, xs.size());
  }
  EXPECT_EQ(points.front().method, "rd");
}

TEST(Plot, EmptyRowsRejected) { EXPECT_THROW(render_svg({}), ParameterError); }

TEST(Plot, OnePolylinePerMethod) {
  const std::string svg = render_svg(run_table2(small_table2()));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t polylines = 0;
  for (std::size_t at = svg.find("<polyline"); at != std::string::npos; at = svg.find("<polyline", at + 1)) ++polylines;
  EXPECT_EQ(polylines, 2u);
  EXPECT_NE(svg.find("data-method=\"rd\""), std::string::npos);
  EXPECT_NE(svg.find("data-method=\"aih\""), std::string::npos);
  EXPECT_NE(svg.find("class=\"errorbar\""), std::string::npos);
}

TEST(Plot, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "mcs_plot_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "rows.csv").string();
  const auto svg = (dir / "rows.svg").string();
  emit_csv(run_table2(small_table2()), csv);
  emit_plot(csv, svg);
  std::ifstream in(svg);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_NE(buf.str().find("</svg>"), std::string::npos);
  std::ofstream(csv) << "garbage\n";
  EXPECT_THROW(emit_plot(csv, svg), ParseError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mcs::experiment
