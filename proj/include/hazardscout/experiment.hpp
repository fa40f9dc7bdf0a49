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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hazardscout/config.hpp"
#include "hazardscout/executor.hpp"

namespace hazardscout {

struct ConfigId {
  int nc = 8;
  int nh = 3;
  int np = 3;
  bool operator==(const ConfigId&) const = default;
};

struct ExperimentGrid {
  std::vector<int> nc{6, 8, 10};
  std::vector<int> nh{1, 2, 3, 4};
  std::vector<int> np{0, 1, 2, 3};
  int trials = 30;
  std::uint64_t base_seed = 1;
  std::vector<Strategy> strategies = all_strategies();

  /// Cartesian product in (nc, nh, np) order.
  std::vector<ConfigId> configurations() const;
  void validate() const;
};

struct ResultRow {
  ConfigId config;
  int trial = 0;
  Strategy strategy = Strategy::kStraight;
  double dkl = 0.0;
  double ecr = 0.0;
  double edv = 0.0;
  int triggered = 0;
  int accepted = 0;
  double replan_time_s = 0.0;  // NaN unless timing was requested
  double exec_len_m = 0.0;
  std::string status = "ok";

  // Not written to results.csv.
  std::uint64_t instance_hash = 0;
  double budget_m = 0.0;
  std::vector<double> edge_lengths;
  std::vector<double> edge_caps;
};

struct ExperimentOptions {
  int jobs = 1;
  bool record_timing = false;
};

/// One instance per (config, trial), shared by every strategy. Rows come back
/// ordered by (config, trial, strategy) whatever the worker count.
std::vector<ResultRow> run_experiment(const ExperimentGrid& grid,
                                      const MissionConfig& base,
                                      const ExperimentOptions& opts = {});

/// Runs all strategies on one trial. Errors become row status.
std::vector<ResultRow> run_trial(const ConfigId& id, int trial,
                                 const ExperimentGrid& grid,
                                 const MissionConfig& base,
                                 bool record_timing);

struct SummaryRow {
  std::optional<ConfigId> config;  // empty for the overall rows
  Strategy strategy = Strategy::kStraight;
  double dkl_mean = 0.0;
  double dkl_std = 0.0;
  double win_rate_vs_offline = 0.0;
  int n = 0;
};

/// Per-(config, strategy) rows in first-seen order, then one overall row per
/// strategy. Only rows with status "ok" count. The win rate is the share of
/// trials where the strategy's Δ_KL is at least offline's (NaN for offline
/// itself or when offline is absent).
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

double sample_std(const std::vector<double>& v);

void write_results_csv(const std::string& path,
                       const std::vector<ResultRow>& rows);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);
std::vector<ResultRow> read_results_csv(const std::string& path);

/// Reads the optional experiment keys (nc_values, nh_values, np_values,
/// trials, base_seed, strategies) from a JSON config text over `defaults`.
ExperimentGrid grid_from_json(const std::string& text,
                              ExperimentGrid defaults = {});

MissionConfig config_for(const MissionConfig& base, const ConfigId& id);

}  // namespace hazardscout
