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

// Command-line front end: scenario, route, run, experiment, report.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hazardscout/config.hpp"
#include "hazardscout/csv_io.hpp"
#include "hazardscout/error.hpp"
#include "hazardscout/executor.hpp"
#include "hazardscout/experiment.hpp"
#include "hazardscout/metrics.hpp"
#include "hazardscout/scenario.hpp"

namespace hs = hazardscout;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct Common {
  std::string config;
  std::optional<int> nc, nh, np;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  int trial = 0;
};

void add_common(CLI::App* cmd, Common* c, bool with_trial) {
  cmd->add_option("--config", c->config, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--nc", c->nc, "number of risk clusters");
  cmd->add_option("--nh", c->nh, "number of hidden clusters");
  cmd->add_option("--np", c->np, "number of pseudo-nodes");
  cmd->add_option("--seed", c->seed, "base seed (overrides HAZARDSCOUT_SEED)");
  cmd->add_option("--out", c->out, "output directory");
  if (with_trial) cmd->add_option("--trial", c->trial, "trial index")->check(CLI::NonNegativeNumber);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hs::InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flag, then environment, then config file, then the built-in default.
std::uint64_t resolve_seed(const Common& c, const hs::ExperimentGrid& from_file) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("HAZARDSCOUT_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw hs::InvalidArgument(std::string("HAZARDSCOUT_SEED is not an integer: ") + env);
    }
  }
  return from_file.base_seed;
}

struct Setup {
  hs::MissionConfig cfg;
  hs::ExperimentGrid grid;
  std::uint64_t seed = 1;
};

Setup load(const Common& c) {
  Setup s;
  if (!c.config.empty()) {
    const std::string text = slurp(c.config);
    s.cfg = hs::config_from_json(text);
    s.grid = hs::grid_from_json(text);
  }
  if (c.nc) s.cfg.n_clusters = *c.nc;
  if (c.nh) s.cfg.n_hidden = *c.nh;
  if (c.np) s.cfg.n_pseudo = *c.np;
  s.cfg.validate();
  s.seed = resolve_seed(c, s.grid);
  fs::create_directories(c.out);
  return s;
}

std::string in_dir(const Common& c, const std::string& name) {
  return (fs::path(c.out) / name).string();
}

hs::ScenarioInstance instance_for(const Common& c, const Setup& s) {
  return hs::make_scenario(s.cfg, hs::trial_seed(s.seed, c.trial));
}

void dump_scenario(const Common& c, const Setup& s,
                   const hs::ScenarioInstance& inst) {
  const auto b0 = hs::initial_belief(inst.reports, s.cfg, inst.grid);
  hs::write_grid_csv(in_dir(c, "truth.csv"), *inst.grid, inst.truth.p_true);
  hs::write_belief_csv(in_dir(c, "belief0.csv"), *inst.grid, b0.probs(),
                       b0.variances());
  hs::write_reports_csv(in_dir(c, "reports.csv"), inst.reports);
  hs::write_points_csv(in_dir(c, "hidden.csv"), inst.hidden_centers);
  std::vector<hs::Point> centers;
  for (const auto& k : inst.truth.clusters) centers.push_back(k.center);
  hs::write_points_csv(in_dir(c, "clusters.csv"), centers);
  hs::save_config(s.cfg, in_dir(c, "config.json"));
}

int cmd_scenario(const Common& c) {
  const Setup s = load(c);
  const auto inst = instance_for(c, s);
  dump_scenario(c, s, inst);
  std::printf("seed %llu hash %016llx reports %zu hidden %zu\n",
              static_cast<unsigned long long>(inst.seed),
              static_cast<unsigned long long>(hs::instance_hash(inst)),
              inst.reports.size(), inst.hidden_centers.size());
  return kExitOk;
}

void dump_plan(const Common& c, const hs::ScenarioInstance& inst,
               const hs::MissionPlan& plan) {
  hs::write_route_csv(in_dir(c, "roi_route.csv"), plan.roi_route);
  hs::write_route_csv(in_dir(c, "route.csv"), plan.route);
  hs::write_points_csv(in_dir(c, "pseudo_nodes.csv"), plan.pseudo_nodes);
  hs::write_budget_csv(in_dir(c, "budget.csv"), plan.budgets);
  std::vector<double> owner(plan.partition.assignment.begin(),
                            plan.partition.assignment.end());
  hs::write_grid_csv(in_dir(c, "partition.csv"), *inst.grid, owner);
}

int cmd_route(const Common& c) {
  const Setup s = load(c);
  const auto inst = instance_for(c, s);
  const auto plan = hs::plan_mission(inst, s.cfg);
  dump_plan(c, inst, plan);
  const double e = hs::ecr(plan.edges, *inst.grid);
  const double v = hs::edv(plan.edges, *inst.grid);
  std::ofstream m(in_dir(c, "route_metrics.csv"));
  m << "ecr,edv,route_length_m,roi_route_length_m,pseudo_requested,pseudo_used\n"
    << hs::format_double(e) << ',' << hs::format_double(v) << ','
    << hs::format_double(plan.route.length()) << ','
    << hs::format_double(plan.roi_route.length()) << ','
    << plan.pseudo_requested << ',' << plan.pseudo_used << '\n';
  std::printf("ecr %.6f edv %.6f route %.1f m (roi-only %.1f m) pseudo %d/%d\n",
              e, v, plan.route.length(), plan.roi_route.length(),
              plan.pseudo_used, plan.pseudo_requested);
  return kExitOk;
}

int cmd_run(const Common& c, const std::string& strategy) {
  const Setup s = load(c);
  const hs::Strategy strat = hs::parse_strategy(strategy);
  const auto inst = instance_for(c, s);
  const auto plan = hs::plan_mission(inst, s.cfg);
  dump_scenario(c, s, inst);
  dump_plan(c, inst, plan);
  const auto r = hs::run_mission(inst, plan, strat, s.cfg, /*keep_log=*/true);
  hs::write_trajectory_csv(in_dir(c, "trajectory.csv"), r.trajectory);
  hs::write_mission_log_csv(in_dir(c, "log.csv"), r.log);
  hs::write_belief_csv(in_dir(c, "belief_final.csv"), *inst.grid,
                       r.final_belief, r.final_variance);
  std::ofstream ed(in_dir(c, "edges.csv"));
  ed << "edge,length_m,cap_m,measurements,triggered,accepted\n";
  for (std::size_t k = 0; k < r.edges.size(); ++k) {
    const auto& e = r.edges[k];
    ed << k << ',' << hs::format_double(e.length) << ','
       << hs::format_double(e.cap) << ',' << e.measurements << ','
       << e.triggered << ',' << e.accepted << '\n';
  }
  std::ofstream m(in_dir(c, "metrics.csv"));
  m << "strategy,dkl,kl_initial,kl_final,ecr,edv,exec_len_m,measurements,"
       "triggered,accepted\n"
    << hs::to_string(strat) << ',' << hs::format_double(r.dkl) << ','
    << hs::format_double(r.kl_initial) << ',' << hs::format_double(r.kl_final)
    << ',' << hs::format_double(hs::ecr(plan.edges, *inst.grid)) << ','
    << hs::format_double(hs::edv(plan.edges, *inst.grid)) << ','
    << hs::format_double(r.executed_length) << ',' << r.measurements << ','
    << r.triggered << ',' << r.accepted << '\n';
  std::printf("%s dkl %.6f length %.1f/%.1f m measurements %d replans %d/%d\n",
              hs::to_string(strat), r.dkl, r.executed_length, s.cfg.budget_m,
              r.measurements, r.accepted, r.triggered);
  return kExitOk;
}

std::vector<hs::Strategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<hs::Strategy> out;
  for (const auto& item : names) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) out.push_back(hs::parse_strategy(name));
    }
  }
  return out;
}

void print_summary(const std::vector<hs::SummaryRow>& rows) {
  for (const auto& r : rows) {
    if (r.config) {
      std::printf("nc=%-2d nh=%d np=%d ", r.config->nc, r.config->nh,
                  r.config->np);
    } else {
      std::printf("overall        ");
    }
    std::printf("%-9s dkl %.4f +- %.4f  win %.3f  n=%d\n",
                hs::to_string(r.strategy), r.dkl_mean, r.dkl_std,
                r.win_rate_vs_offline, r.n);
  }
}

struct ExperimentArgs {
  std::optional<int> trials;
  int jobs = 1;
  std::vector<std::string> strategies;
  bool full = false;
  bool timing = false;
};

int cmd_experiment(const Common& c, const ExperimentArgs& a) {
  Setup s = load(c);
  hs::ExperimentGrid grid = s.grid;
  grid.base_seed = s.seed;
  if (a.full) grid.trials = 100;
  if (a.trials) grid.trials = *a.trials;
  if (c.nc) grid.nc = {*c.nc};
  if (c.nh) grid.nh = {*c.nh};
  if (c.np) grid.np = {*c.np};
  if (!a.strategies.empty()) grid.strategies = parse_strategies(a.strategies);
  grid.validate();
  const auto rows =
      hs::run_experiment(grid, s.cfg, {a.jobs, a.timing});
  hs::write_results_csv(in_dir(c, "results.csv"), rows);
  const auto summary = hs::summarize(rows);
  hs::write_summary_csv(in_dir(c, "summary.csv"), summary);
  int failed = 0;
  for (const auto& r : rows) failed += r.status != "ok";
  print_summary(summary);
  std::printf("%zu rows, %d failed\n", rows.size(), failed);
  return kExitOk;
}

int cmd_report(const Common& c, const std::string& results, bool pgm,
               const std::string& strategy) {
  const Setup s = load(c);
  const std::string path = results.empty() ? in_dir(c, "results.csv") : results;
  if (fs::exists(path)) {
    const auto summary = hs::summarize(hs::read_results_csv(path));
    hs::write_summary_csv(in_dir(c, "summary.csv"), summary);
    print_summary(summary);
  } else if (!pgm) {
    throw hs::InvalidArgument("no results file at " + path);
  }
  if (pgm) {
    const auto inst = instance_for(c, s);
    const auto b0 = hs::initial_belief(inst.reports, s.cfg, inst.grid);
    hs::write_pgm(in_dir(c, "truth.pgm"), *inst.grid, inst.truth.p_true);
    hs::write_pgm(in_dir(c, "belief0.pgm"), *inst.grid, b0.probs());
    if (!strategy.empty()) {
      const auto plan = hs::plan_mission(inst, s.cfg);
      const auto r = hs::run_mission(inst, plan, hs::parse_strategy(strategy), s.cfg);
      hs::write_pgm(in_dir(c, "belief_" + strategy + ".pgm"), *inst.grid,
                    r.final_belief);
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-aware route planning and informative path execution"};
  app.require_subcommand(1);

  Common sc_common, rt_common, run_common, ex_common, rp_common;
  auto* scenario = app.add_subcommand("scenario", "generate and dump one instance");
  add_common(scenario, &sc_common, true);

  auto* route = app.add_subcommand("route", "route, augmentation and budget dumps");
  add_common(route, &rt_common, true);

  auto* run = app.add_subcommand("run", "execute one mission with full logs");
  add_common(run, &run_common, true);
  std::string run_strategy = "online";
  run->add_option("--strategy", run_strategy, "online|offline|lawnmower|straight");

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo grid");
  add_common(experiment, &ex_common, false);
  ExperimentArgs ex;
  experiment->add_option("--trials", ex.trials, "trials per configuration")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--jobs", ex.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--strategy", ex.strategies,
                         "strategies, comma separated (default all)");
  experiment->add_flag("--full", ex.full, "100 trials per configuration");
  experiment->add_flag("--timing", ex.timing,
                       "record replanning wall time (not reproducible)");

  auto* report = app.add_subcommand("report", "summaries and heatmaps");
  add_common(report, &rp_common, true);
  std::string report_results, report_strategy;
  bool report_pgm = false;
  report->add_option("--results", report_results,
                     "results.csv to summarize (default <out>/results.csv)");
  report->add_flag("--pgm", report_pgm, "write truth and belief heatmaps");
  report->add_option("--strategy", report_strategy,
                     "also fly this strategy and map its final belief");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*scenario) return cmd_scenario(sc_common);
    if (*route) return cmd_route(rt_common);
    if (*run) return cmd_run(run_common, run_strategy);
    if (*experiment) return cmd_experiment(ex_common, ex);
    if (*report) {
      return cmd_report(rp_common, report_results, report_pgm, report_strategy);
    }
  } catch (const hs::BudgetInfeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const hs::BudgetExceeded& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const hs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
