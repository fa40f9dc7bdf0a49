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

#include "hazardscout/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "hazardscout/csv_io.hpp"
#include "hazardscout/error.hpp"
#include "hazardscout/metrics.hpp"
#include "hazardscout/scenario.hpp"

namespace hazardscout {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* const kResultsHeader =
    "nc,nh,np,trial,strategy,dkl,ecr,edv,triggered,accepted,replan_time_s,"
    "exec_len_m,status";
const char* const kSummaryHeader =
    "nc,nh,np,strategy,dkl_mean,dkl_std,win_rate_vs_offline,n";

ResultRow failed_row(const ConfigId& id, int trial, Strategy s,
                     const std::string& status) {
  ResultRow r;
  r.config = id;
  r.trial = trial;
  r.strategy = s;
  r.dkl = r.ecr = r.edv = r.replan_time_s = r.exec_len_m = kNaN;
  r.status = status;
  return r;
}

std::string status_of(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return err->kind();
  return "Error";
}

}  // namespace

std::vector<ConfigId> ExperimentGrid::configurations() const {
  std::vector<ConfigId> out;
  for (int c : nc)
    for (int h : nh)
      for (int p : np) out.push_back({c, h, p});
  return out;
}

void ExperimentGrid::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (nc.empty() || nh.empty() || np.empty()) {
    throw InvalidArgument("experiment grid has an empty axis");
  }
  if (strategies.empty()) throw InvalidArgument("no strategies selected");
}

ExperimentGrid grid_from_json(const std::string& text,
                              ExperimentGrid defaults) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentGrid g = std::move(defaults);
  try {
    if (j.contains("nc_values")) g.nc = j.at("nc_values").get<std::vector<int>>();
    if (j.contains("nh_values")) g.nh = j.at("nh_values").get<std::vector<int>>();
    if (j.contains("np_values")) g.np = j.at("np_values").get<std::vector<int>>();
    if (j.contains("trials")) g.trials = j.at("trials").get<int>();
    if (j.contains("base_seed")) g.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("strategies")) {
      g.strategies.clear();
      for (const auto& name : j.at("strategies").get<std::vector<std::string>>()) {
        g.strategies.push_back(parse_strategy(name));
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad experiment key: ") + e.what());
  }
  g.validate();
  return g;
}

MissionConfig config_for(const MissionConfig& base, const ConfigId& id) {
  MissionConfig cfg = base;
  cfg.n_clusters = id.nc;
  cfg.n_hidden = id.nh;
  cfg.n_pseudo = id.np;
  return cfg;
}

std::vector<ResultRow> run_trial(const ConfigId& id, int trial,
                                 const ExperimentGrid& grid,
                                 const MissionConfig& base,
                                 bool record_timing) {
  std::vector<ResultRow> rows;
  MissionConfig cfg;
  ScenarioInstance inst;
  MissionPlan plan;
  double ecr_value = kNaN, edv_value = kNaN;
  try {
    cfg = config_for(base, id);
    cfg.validate();
    inst = make_scenario(cfg, trial_seed(grid.base_seed, trial));
    plan = plan_mission(inst, cfg);
    ecr_value = ecr(plan.edges, *inst.grid);
    edv_value = edv(plan.edges, *inst.grid);
  } catch (const std::exception& e) {
    for (Strategy s : grid.strategies) {
      rows.push_back(failed_row(id, trial, s, status_of(e)));
    }
    return rows;
  }
  const std::uint64_t hash = instance_hash(inst);
  for (Strategy s : grid.strategies) {
    try {
      const MissionResult m = run_mission(inst, plan, s, cfg);
      ResultRow r;
      r.config = id;
      r.trial = trial;
      r.strategy = s;
      r.dkl = m.dkl;
      r.ecr = ecr_value;
      r.edv = edv_value;
      r.triggered = m.triggered;
      r.accepted = m.accepted;
      r.replan_time_s = record_timing ? m.replan_seconds : kNaN;
      r.exec_len_m = m.executed_length;
      r.instance_hash = hash;
      r.budget_m = cfg.budget_m;
      for (std::size_t k = 0; k < m.edges.size(); ++k) {
        r.edge_lengths.push_back(m.edges[k].length);
        r.edge_caps.push_back(m.edges[k].cap);
      }
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      rows.push_back(failed_row(id, trial, s, status_of(e)));
      rows.back().instance_hash = hash;
    }
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentGrid& grid,
                                      const MissionConfig& base,
                                      const ExperimentOptions& opts) {
  grid.validate();
  if (opts.jobs < 1) throw InvalidArgument("jobs must be >= 1");
  const auto configs = grid.configurations();
  const std::size_t units = configs.size() * static_cast<std::size_t>(grid.trials);
  std::vector<std::vector<ResultRow>> slots(units);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) {
      const auto& id = configs[u / grid.trials];
      const int trial = static_cast<int>(u % grid.trials);
      slots[u] = run_trial(id, trial, grid, base, opts.record_timing);
    }
  };
  const int n = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(opts.jobs), units));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<ResultRow> out;
  out.reserve(units * grid.strategies.size());
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }
  return out;
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  struct Acc {
    std::vector<double> dkl;
    int wins = 0;
    int paired = 0;
  };
  // Keys keep first-seen order.
  using Key = std::pair<int, int>;  // (config index, strategy)
  std::vector<ConfigId> configs;
  std::vector<Strategy> strategies;
  auto index_of = [](auto& list, const auto& value) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] == value) return static_cast<int>(i);
    }
    list.push_back(value);
    return static_cast<int>(list.size() - 1);
  };
  std::map<std::tuple<int, int>, double> offline;  // (config, trial) -> dkl
  std::vector<std::pair<Key, const ResultRow*>> ok;
  for (const auto& r : rows) {
    const int c = index_of(configs, r.config);
    const int s = index_of(strategies, r.strategy);
    if (r.status != "ok") continue;
    ok.push_back({{c, s}, &r});
    if (r.strategy == Strategy::kOffline) offline[{c, r.trial}] = r.dkl;
  }
  std::map<Key, Acc> per;
  std::map<int, Acc> overall;
  for (const auto& [key, r] : ok) {
    Acc* targets[] = {&per[key], &overall[key.second]};
    const auto it = offline.find({key.first, r->trial});
    for (Acc* a : targets) {
      a->dkl.push_back(r->dkl);
      if (r->strategy != Strategy::kOffline && it != offline.end()) {
        ++a->paired;
        if (r->dkl >= it->second) ++a->wins;
      }
    }
  }
  auto make = [&](std::optional<ConfigId> id, Strategy s, const Acc& a) {
    SummaryRow row;
    row.config = id;
    row.strategy = s;
    double mean = 0.0;
    for (double x : a.dkl) mean += x;
    row.dkl_mean = a.dkl.empty() ? kNaN : mean / static_cast<double>(a.dkl.size());
    row.dkl_std = a.dkl.empty() ? kNaN : sample_std(a.dkl);
    row.win_rate_vs_offline =
        a.paired > 0 ? static_cast<double>(a.wins) / a.paired : kNaN;
    row.n = static_cast<int>(a.dkl.size());
    return row;
  };
  std::vector<SummaryRow> out;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      const auto it = per.find({static_cast<int>(c), static_cast<int>(s)});
      out.push_back(make(configs[c], strategies[s],
                         it == per.end() ? Acc{} : it->second));
    }
  }
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const auto it = overall.find(static_cast<int>(s));
    out.push_back(make(std::nullopt, strategies[s],
                       it == overall.end() ? Acc{} : it->second));
  }
  return out;
}

void write_results_csv(const std::string& path,
                       const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path);
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << r.config.nc << ',' << r.config.nh << ',' << r.config.np << ','
        << r.trial << ',' << to_string(r.strategy) << ','
        << format_double(r.dkl) << ',' << format_double(r.ecr) << ','
        << format_double(r.edv) << ',' << r.triggered << ',' << r.accepted
        << ',' << format_double(r.replan_time_s) << ','
        << format_double(r.exec_len_m) << ',' << r.status << '\n';
  }
  if (!out) throw InvalidArgument("write failed for " + path);
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path);
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    if (r.config) {
      out << r.config->nc << ',' << r.config->nh << ',' << r.config->np;
    } else {
      out << "*,*,*";
    }
    out << ',' << to_string(r.strategy) << ',' << format_double(r.dkl_mean)
        << ',' << format_double(r.dkl_std) << ','
        << format_double(r.win_rate_vs_offline) << ',' << r.n << '\n';
  }
  if (!out) throw InvalidArgument("write failed for " + path);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  const char* names[] = {"nc",        "nh",       "np",        "trial",
                         "strategy",  "dkl",      "ecr",       "edv",
                         "triggered", "accepted", "replan_time_s",
                         "exec_len_m", "status"};
  int col[13];
  for (int i = 0; i < 13; ++i) col[i] = t.column(names[i]);
  std::vector<ResultRow> rows;
  for (const auto& f : t.rows) {
    ResultRow r;
    r.config = {std::stoi(f[col[0]]), std::stoi(f[col[1]]), std::stoi(f[col[2]])};
    r.trial = std::stoi(f[col[3]]);
    r.strategy = parse_strategy(f[col[4]]);
    r.dkl = std::stod(f[col[5]]);
    r.ecr = std::stod(f[col[6]]);
    r.edv = std::stod(f[col[7]]);
    r.triggered = std::stoi(f[col[8]]);
    r.accepted = std::stoi(f[col[9]]);
    r.replan_time_s = std::stod(f[col[10]]);
    r.exec_len_m = std::stod(f[col[11]]);
    r.status = f[col[12]];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hazardscout
