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
#include <span>
#include <string>
#include <vector>

#include "hazardscout/belief.hpp"
#include "hazardscout/budget.hpp"
#include "hazardscout/config.hpp"
#include "hazardscout/geometry.hpp"
#include "hazardscout/planner.hpp"
#include "hazardscout/rng.hpp"
#include "hazardscout/routing.hpp"
#include "hazardscout/scenario.hpp"

namespace hazardscout {

enum class Strategy { kOnline, kOffline, kLawnmower, kStraight };

const char* to_string(Strategy s);
/// Throws InvalidArgument for unknown names.
Strategy parse_strategy(const std::string& name);
std::vector<Strategy> all_strategies();

/// Mean absolute belief difference over `cells`.
double belief_change(std::span<const double> belief,
                     std::span<const double> reference,
                     std::span<const std::size_t> cells);

bool replan_gate(double delta_b, double eps_b, double d_rem, double l_rem,
                 double delta);

bool accept_replan(double j_new, double j_old_rem, double delta_psi);

/// Boustrophedon polyline from `edge.a` to `edge.b` with length <= cap.
/// `side` (+1 or -1) picks the direction of the first sweep leg.
std::vector<Point> lawnmower_path(const Segment& edge, double cap,
                                  const VehicleLimits& limits, int side = 1);

double polyline_length(std::span<const Point> pts);

/// Points spaced `spacing` apart along the polyline, starting at its first
/// vertex.
std::vector<Point> resample_polyline(std::span<const Point> pts,
                                     double spacing);

/// Route, edges, partition and edge budgets for one instance.
struct MissionPlan {
  Route roi_route;
  Route route;
  std::vector<Segment> edges;
  SegmentPartition partition;
  std::vector<EdgeBudget> budgets;
  std::vector<Point> pseudo_nodes;
  int pseudo_requested = 0;
  int pseudo_used = 0;
};

/// Throws BudgetInfeasible when even the ROI-only route exceeds D_m.
MissionPlan plan_mission(const ScenarioInstance& inst,
                         const MissionConfig& cfg);

struct LogRow {
  int step = 0;
  Point position = Point::Zero();
  double y = 0.0;
  bool triggered = false;
  bool accepted = false;
  int edge = 0;
};

struct EdgeResult {
  double length = 0.0;  // executed, m
  double cap = 0.0;
  int measurements = 0;
  int triggered = 0;
  int accepted = 0;
  std::vector<double> replan_seconds;
};

struct MissionResult {
  Strategy strategy = Strategy::kStraight;
  std::vector<Point> trajectory;
  std::vector<double> final_belief;
  std::vector<double> final_variance;
  std::vector<EdgeResult> edges;
  std::vector<LogRow> log;
  int measurements = 0;
  int triggered = 0;
  int accepted = 0;
  double replan_seconds = 0.0;
  double executed_length = 0.0;
  double kl_initial = 0.0;
  double kl_final = 0.0;
  double dkl = 0.0;
  /// Largest distance between an ROI waypoint and the executed trajectory.
  double roi_miss = 0.0;
};

struct ExecutionContext {
  const ScenarioInstance* instance = nullptr;
  const MissionConfig* cfg = nullptr;
  VehicleLimits limits;
  OptimizerConfig optimizer;
  SensorModel sensor;
  bool keep_log = false;
};

/// Flies one edge with the given strategy, updating `belief` in place and
/// appending to `result`.
void execute_edge(const ExecutionContext& ctx, const MissionPlan& plan,
                  int edge, Strategy strategy, BeliefGrid& belief, Rng& noise,
                  MissionResult* result);

MissionResult run_mission(const ScenarioInstance& inst, const MissionPlan& plan,
                          Strategy strategy, const MissionConfig& cfg,
                          Rng& noise, bool keep_log = false);

/// Uses the per-instance noise stream, so every strategy sees the same
/// measurement noise sequence.
MissionResult run_mission(const ScenarioInstance& inst, const MissionPlan& plan,
                          Strategy strategy, const MissionConfig& cfg,
                          bool keep_log = false);

}  // namespace hazardscout
