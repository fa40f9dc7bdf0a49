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

#include <numeric>
#include <random>

#include "hazardscout/budget.hpp"
#include "hazardscout/error.hpp"

namespace hazardscout {
namespace {

SegmentPartition with_areas(std::vector<double> areas) {
  SegmentPartition p;
  p.areas = std::move(areas);
  return p;
}

std::vector<Segment> dummy_edges(std::size_t n) {
  std::vector<Segment> e;
  for (std::size_t k = 0; k < n; ++k) e.push_back({{0, 0}, {1.0 + k, 0}});
  return e;
}

double total(const std::vector<EdgeBudget>& b) {
  double s = 0;
  for (const auto& x : b) s += x.marginal;
  return s;
}

TEST(Nominal, Lengths) {
  EXPECT_DOUBLE_EQ(nominal_length({{0, 0}, {3, 4}}), 5.0);
  EXPECT_DOUBLE_EQ(nominal_length({{2, 2}, {2, 2}}), 0.0);
  const Segment whole{{0, 0}, {30, 40}};
  EXPECT_NEAR(nominal_length({{0, 0}, {12, 16}}) + nominal_length({{12, 16}, {30, 40}}),
              nominal_length(whole), 1e-12);
}

TEST(Marginal, Values) {
  const std::vector<Segment> e{{{0, 0}, {1000, 0}}, {{1000, 0}, {1000, 2000}}};
  EXPECT_DOUBLE_EQ(marginal_budget(5000, e), 2000);
  EXPECT_DOUBLE_EQ(marginal_budget(3000, e), 0);
  EXPECT_THROW(marginal_budget(2999, e), BudgetExceeded);
}

TEST(Allocate, AreaOnly) {
  auto b = allocate_budgets(dummy_edges(4), with_areas({1, 1, 1, 1}), std::nullopt, 2000);
  for (const auto& x : b) EXPECT_DOUBLE_EQ(x.marginal, 500);
  b = allocate_budgets(dummy_edges(2), with_areas({3, 1}), std::nullopt, 400);
  EXPECT_DOUBLE_EQ(b[0].marginal, 300);
  EXPECT_DOUBLE_EQ(b[1].marginal, 100);
  EXPECT_DOUBLE_EQ(b[1].nominal, 2.0);
  EXPECT_DOUBLE_EQ(b[1].cap(), 102.0);
}

TEST(Allocate, Weighted) {
  const std::vector<double> s{0.2, 0.6};
  const auto b = allocate_budgets(dummy_edges(2), with_areas({1, 1}),
                                  std::span<const double>(s), 400);
  EXPECT_NEAR(b[0].marginal, 100, 1e-12);
  EXPECT_NEAR(b[1].marginal, 300, 1e-12);
}

TEST(Allocate, ZeroScoresFallBackToArea) {
  const std::vector<double> s{0, 0};
  const auto b = allocate_budgets(dummy_edges(2), with_areas({3, 1}),
                                  std::span<const double>(s), 400);
  EXPECT_DOUBLE_EQ(b[0].marginal, 300);
  EXPECT_DOUBLE_EQ(b[1].marginal, 100);
}

TEST(Allocate, ConservationScaleInvarianceNonNegative) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 11;
    std::vector<double> areas(n), s(n), s2(n);
    for (std::size_t k = 0; k < n; ++k) {
      areas[k] = 1000 * u(rng);
      s[k] = u(rng);
      s2[k] = 7.5 * s[k];
    }
    const double marg = 5000 * u(rng);
    const auto a = allocate_budgets(dummy_edges(n), with_areas(areas),
                                    std::span<const double>(s), marg);
    const auto b = allocate_budgets(dummy_edges(n), with_areas(areas),
                                    std::span<const double>(s2), marg);
    EXPECT_NEAR(total(a), marg, 1e-9 * std::max(1.0, marg));
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_GE(a[k].marginal, 0.0);
      EXPECT_NEAR(a[k].marginal, b[k].marginal, 1e-9 * std::max(1.0, marg));
    }
  }
}

TEST(Scores, MeanBeliefPerEdge) {
  auto g = std::make_shared<const Grid>(Domain{0, 40, 0, 20}, 2, 1);
  const std::vector<double> p{0.2, 0.6};
  BeliefGrid b(g, p, 1.0);
  SegmentPartition part;
  part.assignment = {0, 1};
  part.areas = {400, 400};
  const auto s = mean_belief_scores(b, part, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s[0], 0.2, 1e-12);
  EXPECT_NEAR(s[1], 0.6, 1e-12);
  EXPECT_DOUBLE_EQ(s[2], 0.0);
}

}  // namespace
}  // namespace hazardscout
