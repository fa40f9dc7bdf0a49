/*
 * Copyright 2026 The HazardScout Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hazardscout/csv_io.hpp"
#include "hazardscout/error.hpp"
#include "hazardscout/experiment.hpp"

namespace hazardscout {
namespace {

namespace fs = std::filesystem;

std::string temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hazardscout_unit";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ResultRow row(ConfigId id, int trial, Strategy s, double dkl) {
  ResultRow r;
  r.config = id;
  r.trial = trial;
  r.strategy = s;
  r.dkl = dkl;
  return r;
}

TEST(Summary, MeanAndSampleStd) {
  const std::vector<ResultRow> rows{row({8, 3, 3}, 0, Strategy::kStraight, 1),
                                    row({8, 3, 3}, 1, Strategy::kStraight, 2),
                                    row({8, 3, 3}, 2, Strategy::kStraight, 3)};
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_DOUBLE_EQ(s[0].dkl_mean, 2.0);
  EXPECT_DOUBLE_EQ(s[0].dkl_std, 1.0);
  EXPECT_EQ(s[0].n, 3);
  EXPECT_FALSE(s[1].config.has_value());
  EXPECT_TRUE(std::isnan(s[0].win_rate_vs_offline));
}

TEST(Summary, SingleTrialStdIsZero) {
  const auto s = summarize({row({6, 1, 0}, 0, Strategy::kOffline, 0.4)});
  EXPECT_DOUBLE_EQ(s[0].dkl_std, 0.0);
  EXPECT_DOUBLE_EQ(sample_std({5.0}), 0.0);
}

TEST(Summary, WinRate) {
  std::vector<ResultRow> rows;
  for (int t = 0; t < 10; ++t) {
    rows.push_back(row({8, 3, 3}, t, Strategy::kOnline, t < 9 ? 1.0 : 0.0));
    rows.push_back(row({8, 3, 3}, t, Strategy::kOffline, 0.5));
  }
  const auto s = summarize(rows);
  EXPECT_DOUBLE_EQ(s[0].win_rate_vs_offline, 0.9);
  EXPECT_TRUE(std::isnan(s[1].win_rate_vs_offline));
}

TEST(Summary, FailedRowsExcluded) {
  auto bad = row({8, 3, 3}, 1, Strategy::kStraight, NAN);
  bad.status = "BudgetInfeasible";
  const auto s = summarize({row({8, 3, 3}, 0, Strategy::kStraight, 0.2), bad});
  EXPECT_EQ(s[0].n, 1);
  EXPECT_DOUBLE_EQ(s[0].dkl_mean, 0.2);
}

TEST(Grid, FullGridSize) {
  ExperimentGrid g;
  EXPECT_EQ(g.configurations().size(), 48u);
  g.trials = 0;
  EXPECT_THROW(g.validate(), InvalidArgument);
}

TEST(Grid, FromJson) {
  const auto g = grid_from_json(
      R"({"nc_values": [8], "nh_values": [1, 3], "trials": 4, "base_seed": 11,
          "strategies": ["offline", "online"], "budget_m": 5000})");
  EXPECT_EQ(g.nc, std::vector<int>{8});
  EXPECT_EQ(g.nh, (std::vector<int>{1, 3}));
  EXPECT_EQ(g.trials, 4);
  EXPECT_EQ(g.base_seed, 11u);
  EXPECT_EQ(g.strategies, (std::vector<Strategy>{Strategy::kOffline, Strategy::kOnline}));
  EXPECT_THROW(grid_from_json(R"({"strategies": ["fly"]})"), InvalidArgument);
}

TEST(Experiment, OneRowPerStrategy) {
  ExperimentGrid g;
  g.nc = {8};
  g.nh = {3};
  g.np = {3};
  g.trials = 1;
  g.strategies = {Strategy::kStraight};
  const auto rows = run_experiment(g, MissionConfig{});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, "ok");
  EXPECT_TRUE(std::isnan(rows[0].replan_time_s));
}

TEST(Experiment, SharedInstancesAndJobIndependence) {
  ExperimentGrid g;
  g.nc = {6};
  g.nh = {1, 2};
  g.np = {0};
  g.trials = 3;
  g.base_seed = 5;
  g.strategies = {Strategy::kLawnmower, Strategy::kStraight};
  const auto a = run_experiment(g, MissionConfig{}, {1, false});
  const auto b = run_experiment(g, MissionConfig{}, {3, false});
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t i = 0; i < a.size(); i += 2) {
    EXPECT_EQ(a[i].instance_hash, a[i + 1].instance_hash);
    EXPECT_EQ(a[i].trial, a[i + 1].trial);
  }
  const std::string pa = temp_path("a.csv"), pb = temp_path("b.csv");
  write_results_csv(pa, a);
  write_results_csv(pb, b);
  EXPECT_EQ(slurp(pa), slurp(pb));
}

TEST(Experiment, ErrorsBecomeStatus) {
  ExperimentGrid g;
  g.nc = {8};
  g.nh = {1};
  g.np = {0};
  g.trials = 2;
  g.strategies = {Strategy::kStraight, Strategy::kLawnmower};
  MissionConfig cfg;
  cfg.budget_m = 400;
  const auto rows = run_experiment(g, cfg);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.status, "BudgetInfeasible");
    EXPECT_TRUE(std::isnan(r.dkl));
  }
}

TEST(Experiment, ResultsRoundTripAndSummaryRecomputes) {
  ExperimentGrid g;
  g.nc = {6};
  g.nh = {1};
  g.np = {1};
  g.trials = 2;
  g.strategies = {Strategy::kStraight, Strategy::kLawnmower};
  const auto rows = run_experiment(g, MissionConfig{});
  const std::string path = temp_path("results.csv");
  write_results_csv(path, rows);
  const auto back = read_results_csv(path);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].dkl, rows[i].dkl);
    EXPECT_EQ(back[i].exec_len_m, rows[i].exec_len_m);
    EXPECT_EQ(back[i].strategy, rows[i].strategy);
  }
  const std::string s1 = temp_path("s1.csv"), s2 = temp_path("s2.csv");
  write_summary_csv(s1, summarize(rows));
  write_summary_csv(s2, summarize(back));
  EXPECT_EQ(slurp(s1), slurp(s2));
  const auto header = slurp(path).substr(0, slurp(path).find('\n'));
  EXPECT_EQ(header,
            "nc,nh,np,trial,strategy,dkl,ecr,edv,triggered,accepted,"
            "replan_time_s,exec_len_m,status");
  const auto sh = slurp(s1).substr(0, slurp(s1).find('\n'));
  EXPECT_EQ(sh, "nc,nh,np,strategy,dkl_mean,dkl_std,win_rate_vs_offline,n");
  EXPECT_NE(slurp(s1).find("*,*,*,straight,"), std::string::npos);
}

TEST(Csv, FormatDouble) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(NAN), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Csv, PgmLayout) {
  const Grid g(Domain{0, 30, 0, 20}, 3, 2);
  const std::vector<double> v{0.0, 0.5, 1.0, 1.0, 2.0, -1.0};
  const std::string path = temp_path("t.pgm");
  write_pgm(path, g, v);
  EXPECT_EQ(slurp(path), "P2\n3 2\n255\n255 255 0\n0 128 255\n");
  EXPECT_THROW(write_pgm(path, g, v, 1.0, 1.0), InvalidArgument);
}

TEST(Csv, GridDumpAndRead) {
  const Grid g(Domain{0, 40, 0, 20}, 2, 1);
  const std::vector<double> v{0.25, 0.75};
  const std::string path = temp_path("grid.csv");
  write_grid_csv(path, g, v);
  const auto t = read_csv(path);
  EXPECT_EQ(t.header, (std::vector<std::string>{"x", "y", "value"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][t.column("x")], "30");
  EXPECT_EQ(t.rows[1][t.column("value")], "0.75");
  EXPECT_THROW(t.column("nope"), InvalidArgument);
  const std::vector<double> wrong{1.0};
  EXPECT_THROW(write_grid_csv(path, g, wrong), GridMismatch);
}

}  // namespace
}  // namespace hazardscout
