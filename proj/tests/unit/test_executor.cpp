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
#include <limits>
#include <random>

#include "hazardscout/error.hpp"
#include "hazardscout/executor.hpp"
#include "hazardscout/metrics.hpp"

namespace hazardscout {
namespace {

TEST(BeliefChange, Values) {
  std::vector<double> a(100, 0.3), b = a;
  std::vector<std::size_t> cells(100);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  EXPECT_DOUBLE_EQ(belief_change(a, b, cells), 0.0);
  b[17] = 0.8;
  EXPECT_NEAR(belief_change(a, b, cells), 0.005, 1e-15);
  EXPECT_DOUBLE_EQ(belief_change(a, b, cells), belief_change(b, a, cells));
  EXPECT_THROW(belief_change(a, b, {}), InvalidArgument);
}

TEST(Gate, Conditions) {
  EXPECT_TRUE(replan_gate(0.02, 0.01, 500, 300, 50));
  EXPECT_FALSE(replan_gate(0.005, 0.01, 500, 300, 50));
  EXPECT_FALSE(replan_gate(0.02, 0.01, 349, 300, 50));
  EXPECT_TRUE(replan_gate(0.01, 0.01, 350, 300, 50));
}

TEST(Accept, Threshold) {
  EXPECT_TRUE(accept_replan(1.5, 1.0, 0.5));
  EXPECT_FALSE(accept_replan(0.9, 1.0, 0.0));
  EXPECT_TRUE(accept_replan(1.0, 1.0, 0.0));
}

TEST(Strategy, NamesRoundTrip) {
  for (Strategy s : all_strategies()) EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_THROW(parse_strategy("zigzag"), InvalidArgument);
}

TEST(Lawnmower, DegenerateIsStraight) {
  const Segment e{{100, 100}, {400, 500}};
  const auto p = lawnmower_path(e, e.length(), VehicleLimits{});
  EXPECT_NEAR(polyline_length(p), e.length(), 1e-9);
  EXPECT_EQ(p.front(), e.a);
  EXPECT_EQ(p.back(), e.b);
  EXPECT_THROW(lawnmower_path(e, e.length() - 1.0, VehicleLimits{}), CapBelowChord);
}

TEST(Lawnmower, LengthAccounting) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pos(100, 900), extra(0.0, 2.0);
  const VehicleLimits lim;
  for (int t = 0; t < 300; ++t) {
    const Segment e{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}};
    if (e.length() < 50) continue;
    const double cap = e.length() * (1.0 + extra(rng));
    for (int side : {1, -1}) {
      const auto p = lawnmower_path(e, cap, lim, side);
      const double len = polyline_length(p);
      EXPECT_LE(len, cap * (1 + 1e-12));
      if (cap >= 1.5 * e.length()) EXPECT_GE(len, 0.9 * cap);
      EXPECT_EQ(p.front(), e.a);
      EXPECT_EQ(p.back(), e.b);
    }
  }
}

TEST(Lawnmower, CornersRespectTurnRadius) {
  const Segment e{{100, 500}, {700, 500}};
  const VehicleLimits lim;
  const auto p = lawnmower_path(e, 1400.0, lim);
  const auto dense = resample_polyline(p, 0.5);
  // Discrete curvature from three points two meters apart.
  for (std::size_t i = 4; i + 4 < dense.size(); ++i) {
    const Point a = dense[i - 4], b = dense[i], c = dense[i + 4];
    const double ab = (b - a).norm(), bc = (c - b).norm(), ca = (a - c).norm();
    const Point u = b - a, v = c - b;
    const double cross = std::abs(u.x() * v.y() - u.y() * v.x());
    const double k = 2.0 * cross / std::max(ab * bc * ca, 1e-12);
    EXPECT_LE(k, lim.chi_max * 1.05);
  }
}

TEST(Polyline, Resample) {
  const std::vector<Point> p{{0, 0}, {10, 0}, {10, 10}};
  EXPECT_DOUBLE_EQ(polyline_length(p), 20.0);
  const auto r = resample_polyline(p, 5.0);
  ASSERT_EQ(r.size(), 5u);
  EXPECT_NEAR((r[2] - Point{10, 0}).norm(), 0.0, 1e-12);
  EXPECT_NEAR((r[4] - Point{10, 10}).norm(), 0.0, 1e-12);
}

class MissionTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    cfg_ = new MissionConfig();
    inst_ = new ScenarioInstance(make_scenario(*cfg_, trial_seed(3, 0)));
    plan_ = new MissionPlan(plan_mission(*inst_, *cfg_));
    for (Strategy s : all_strategies()) {
      results_.push_back(run_mission(*inst_, *plan_, s, *cfg_));
    }
  }
  static void TearDownTestSuite() {
    delete cfg_;
    delete inst_;
    delete plan_;
    results_.clear();
  }
  static MissionConfig* cfg_;
  static ScenarioInstance* inst_;
  static MissionPlan* plan_;
  static std::vector<MissionResult> results_;
};
MissionConfig* MissionTest::cfg_ = nullptr;
ScenarioInstance* MissionTest::inst_ = nullptr;
MissionPlan* MissionTest::plan_ = nullptr;
std::vector<MissionResult> MissionTest::results_;

TEST_F(MissionTest, PlanIsConsistent) {
  EXPECT_EQ(plan_->edges.size(), plan_->budgets.size());
  double caps = 0;
  for (const auto& b : plan_->budgets) {
    EXPECT_GE(b.marginal, 0.0);
    caps += b.cap();
  }
  EXPECT_LE(caps, cfg_->budget_m + 1e-6);
  EXPECT_EQ(plan_->route.count(NodeKind::kRoi), inst_->reports.size());
  EXPECT_EQ(plan_->roi_route.count(NodeKind::kPseudo), 0u);
  EXPECT_LE(plan_->pseudo_used, plan_->pseudo_requested);
}

TEST_F(MissionTest, BudgetSafety) {
  for (const auto& r : results_) {
    EXPECT_LE(r.executed_length, cfg_->budget_m * (1 + 1e-3)) << to_string(r.strategy);
    ASSERT_EQ(r.edges.size(), plan_->budgets.size());
    for (std::size_t k = 0; k < r.edges.size(); ++k) {
      EXPECT_LE(r.edges[k].length, plan_->budgets[k].cap() + 1e-6);
    }
    EXPECT_LE(r.accepted, r.triggered);
  }
}

TEST_F(MissionTest, MeasurementArithmeticAndWaypoints) {
  for (const auto& r : results_) {
    int total = 0;
    for (const auto& e : r.edges) {
      EXPECT_EQ(e.measurements,
                static_cast<int>(std::floor(e.length / cfg_->measurement_spacing + 1e-9)) + 1);
      total += e.measurements;
    }
    EXPECT_EQ(total, r.measurements);
    EXPECT_LE(r.roi_miss, 1e-3) << to_string(r.strategy);
    EXPECT_NEAR((r.trajectory.back() - inst_->depot).norm(), 0.0, 1e-3);
  }
}

TEST_F(MissionTest, StraightFliesTheRoute) {
  const auto& r = results_[static_cast<int>(Strategy::kStraight)];
  EXPECT_NEAR(r.executed_length, plan_->route.length(), 1e-6);
  EXPECT_EQ(r.triggered, 0);
}

TEST_F(MissionTest, OnlyOnlineReplans) {
  for (const auto& r : results_) {
    if (r.strategy != Strategy::kOnline) EXPECT_EQ(r.triggered, 0);
  }
}

TEST_F(MissionTest, KlBookkeeping) {
  for (const auto& r : results_) {
    EXPECT_NEAR(r.dkl, r.kl_initial - r.kl_final, 1e-12);
    EXPECT_NEAR(r.kl_final, bernoulli_kl(inst_->truth.p_true, r.final_belief, cfg_->kl_eps),
                1e-12);
  }
}

TEST_F(MissionTest, RepeatableAndLogged) {
  const auto again = run_mission(*inst_, *plan_, Strategy::kOffline, *cfg_, true);
  const auto& first = results_[static_cast<int>(Strategy::kOffline)];
  EXPECT_EQ(again.dkl, first.dkl);
  EXPECT_EQ(again.final_belief, first.final_belief);
  EXPECT_EQ(static_cast<int>(again.log.size()), again.measurements);
}

TEST(Mission, OfflineEqualsOnlineWithoutTrigger) {
  MissionConfig cfg;
  cfg.eps_b = std::numeric_limits<double>::infinity();
  const auto inst = make_scenario(cfg, trial_seed(4, 1));
  const auto plan = plan_mission(inst, cfg);
  const auto on = run_mission(inst, plan, Strategy::kOnline, cfg);
  const auto off = run_mission(inst, plan, Strategy::kOffline, cfg);
  EXPECT_EQ(on.triggered, 0);
  EXPECT_EQ(on.final_belief, off.final_belief);
  EXPECT_EQ(on.dkl, off.dkl);
  EXPECT_EQ(on.executed_length, off.executed_length);
}

TEST(Mission, NoTriggerWhenTruthEqualsBelief) {
  MissionConfig cfg;
  cfg.sigma_y = 1e-12;
  auto inst = make_scenario(cfg, trial_seed(5, 0));
  const auto b0 = initial_belief(inst.reports, cfg, inst.grid);
  inst.truth.p_true = b0.probs();
  const auto plan = plan_mission(inst, cfg);
  const auto r = run_mission(inst, plan, Strategy::kOnline, cfg);
  EXPECT_EQ(r.triggered, 0);
  EXPECT_NEAR(r.dkl, 0.0, 1e-12);
}

TEST(Mission, InfeasibleBudget) {
  MissionConfig cfg;
  cfg.budget_m = 300;
  const auto inst = make_scenario(cfg, 1);
  EXPECT_THROW(plan_mission(inst, cfg), BudgetInfeasible);
}

}  // namespace
}  // namespace hazardscout
