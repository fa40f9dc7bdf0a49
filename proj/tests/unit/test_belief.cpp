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
#include <random>

#include "hazardscout/belief.hpp"
#include "hazardscout/error.hpp"

namespace hazardscout {
namespace {

std::shared_ptr<const Grid> grid50() {
  return std::make_shared<const Grid>(Domain{}, 50, 50);
}

// One 20 m cell centered at (10, 10).
std::shared_ptr<const Grid> single_cell() {
  return std::make_shared<const Grid>(Domain{0, 20, 0, 20}, 1, 1);
}

BeliefGrid uniform(std::shared_ptr<const Grid> g, double b, double v = 1.0) {
  std::vector<double> p(g->size(), b);
  return BeliefGrid(g, p, v);
}

TEST(LogOdds, ValuesAndInverse) {
  EXPECT_DOUBLE_EQ(log_odds(0.5), 0.0);
  EXPECT_NEAR(logistic(0.8), 0.6899744811, 1e-9);
  EXPECT_NEAR(logistic(log_odds(0.123)), 0.123, 1e-12);
  EXPECT_THROW(log_odds(0.0), InvalidArgument);
  EXPECT_THROW(log_odds(1.0), InvalidArgument);
  EXPECT_THROW(log_odds(-0.2), InvalidArgument);
}

TEST(Neighborhood, CenterPlusAxisNeighbors) {
  const auto g = grid50();
  const Point x = g->center(g->index(10, 10));
  const auto n = update_neighborhood(x, *g, 20.0);
  const std::vector<std::size_t> want{g->index(10, 9), g->index(9, 10),
                                      g->index(10, 10), g->index(11, 10),
                                      g->index(10, 11)};
  EXPECT_EQ(n, want);
}

TEST(Neighborhood, TinyRadiusAtCornerIsEmpty) {
  const auto g = grid50();
  EXPECT_TRUE(update_neighborhood({20, 20}, *g, 5.0).empty());
}

TEST(Neighborhood, HugeRadiusCoversAll) {
  const auto g = grid50();
  EXPECT_EQ(update_neighborhood({500, 500}, *g, 2000.0).size(), g->size());
}

TEST(Predict, ConstantAndSingleCell) {
  SensorModel s;
  const auto g = grid50();
  EXPECT_NEAR(predict_measurement(uniform(g, 0.5), {503, 497}, s), 0.4, 1e-12);

  const auto one = single_cell();
  // b = 1 is held as logistic(15), the log-odds clamp.
  auto b = uniform(one, 1.0 - 1e-9);
  EXPECT_NEAR(predict_measurement(b, {10, 10}, s), s.mu0 + s.kappa, 1e-6);
  EXPECT_NEAR(predict_measurement(uniform(one, 0.5), {10, 10}, s), 0.4, 1e-12);
}

TEST(Predict, EmptyNeighborhoodThrows) {
  SensorModel s;
  s.r_upd = 5.0;
  const auto g = grid50();
  EXPECT_THROW(predict_measurement(uniform(g, 0.5), {20, 20}, s),
               EmptyNeighborhood);
  auto b = uniform(g, 0.5);
  EXPECT_THROW(ekf_update(b, {{20, 20}, 0.3}, s), EmptyNeighborhood);
}

TEST(Ekf, HandComputedUpdate) {
  SensorModel s;  // kappa 0.8, sigma_y 0.1
  auto b = uniform(single_cell(), 0.5, 1.0);
  ekf_update(b, {{10, 10}, 0.6}, s);
  // H = 0.2, y_hat = 0.4, S = 0.05, G = 4.
  EXPECT_NEAR(b.logit(0), 0.8, 1e-12);
  EXPECT_NEAR(b.prob(0), 0.6899744811, 1e-9);
  EXPECT_NEAR(b.variance(0), 0.2, 1e-12);
}

TEST(Ekf, ZeroInnovationStillContracts) {
  SensorModel s;
  auto b = uniform(single_cell(), 0.5, 1.0);
  ekf_update(b, {{10, 10}, 0.4}, s);
  EXPECT_NEAR(b.logit(0), 0.0, 1e-15);
  EXPECT_NEAR(b.variance(0), 0.2, 1e-12);
}

TEST(Ekf, OutsideNeighborhoodUntouched) {
  SensorModel s;
  const auto g = grid50();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  std::vector<double> p(g->size());
  for (auto& x : p) x = u(rng);
  BeliefGrid b(g, p, 0.7);
  const BeliefGrid before = b;
  const Point x{412.3, 377.7};
  const auto touched = ekf_update(b, {x, 0.9}, s);
  EXPECT_EQ(touched, update_neighborhood(x, *g, s.r_upd));
  std::vector<bool> in(g->size(), false);
  for (auto i : touched) in[i] = true;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (in[i]) continue;
    EXPECT_EQ(b.prob(i), before.prob(i));
    EXPECT_EQ(b.logit(i), before.logit(i));
    EXPECT_EQ(b.variance(i), before.variance(i));
  }
}

TEST(Ekf, LogOddsClamped) {
  SensorModel s;
  s.sigma_y = 1e-3;
  auto b = uniform(single_cell(), 0.5, 1e6);
  for (int k = 0; k < 50; ++k) ekf_update(b, {{10, 10}, 50.0}, s);
  EXPECT_LE(std::abs(b.logit(0)), kLogOddsLimit);
  EXPECT_GT(b.prob(0), 0.0);
  EXPECT_LT(b.prob(0), 1.0);
}

TEST(Ekf, RandomUpdatesContractAndApproach) {
  SensorModel s;
  const auto g = grid50();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.01, 0.99), pos(0, 1000),
      y(-0.5, 1.5), v(0.0, 3.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> p(g->size());
    for (auto& x : p) x = u(rng);
    BeliefGrid b(g, p, v(rng));
    const Point x{pos(rng), pos(rng)};
    const double yy = y(rng);
    const double before = predict_measurement(b, x, s);
    const BeliefGrid old = b;
    for (auto i : ekf_update(b, {x, yy}, s)) {
      EXPECT_GE(b.variance(i), 0.0);
      EXPECT_LE(b.variance(i), old.variance(i));
      EXPECT_NEAR(b.prob(i), logistic(b.logit(i)), 1e-12);
    }
    EXPECT_LE(std::abs(predict_measurement(b, x, s) - yy),
              std::abs(before - yy) + 1e-12);
  }
}

TEST(Diffuse, IdentityAndFixedPoint) {
  const auto g = grid50();
  std::vector<double> p(g->size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = 0.1 + 0.8 * (i % 7) / 7.0;
  BeliefGrid b(g, p, 1.0);
  const auto l0 = b.logits();
  diffuse(b, 0.0);
  EXPECT_EQ(b.logits(), l0);

  auto flat = uniform(g, 0.3);
  const auto lf = flat.logits();
  diffuse(flat, 0.7);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(flat.logit(i), lf[i], 1e-14);
}

TEST(Diffuse, SpikeStencil) {
  const auto g = grid50();
  auto b = uniform(g, 0.5);
  const std::size_t c = g->index(20, 20);
  b.set_logit(c, 4.0);
  diffuse(b, 0.5);
  EXPECT_NEAR(b.logit(c), 2.0, 1e-12);
  for (auto n : {g->index(19, 20), g->index(21, 20), g->index(20, 19),
                 g->index(20, 21)}) {
    EXPECT_NEAR(b.logit(n), 0.5, 1e-12);
  }
  EXPECT_NEAR(b.logit(g->index(21, 21)), 0.0, 1e-12);
  for (double v : b.variances()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Simulate, NoiselessLimits) {
  SensorModel s;
  s.sigma_y = 0.0;
  const auto g = grid50();
  Rng rng = make_rng({4});
  std::vector<double> zero(g->size(), 0.0), one(g->size(), 1.0);
  EXPECT_NEAR(simulate_measurement(zero, *g, {333, 444}, s, rng), s.mu0, 1e-15);
  EXPECT_NEAR(simulate_measurement(one, *g, {333, 444}, s, rng), s.mu0 + s.kappa, 1e-12);
  const auto c = single_cell();
  std::vector<double> half(1, 0.5);
  EXPECT_NEAR(simulate_measurement(half, *c, {10, 10}, s, rng), 0.4, 1e-12);
}

TEST(Simulate, NoiseHasConfiguredSpread) {
  SensorModel s;
  const auto g = grid50();
  Rng rng = make_rng({8});
  std::vector<double> half(g->size(), 0.5);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double y = simulate_measurement(half, *g, {500, 500}, s, rng);
    sum += y;
    sq += y * y;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.4, 0.005);
  EXPECT_NEAR(std::sqrt(sq / n - mean * mean), s.sigma_y, 0.005);
}

TEST(Kernel, SharedForm) {
  EXPECT_DOUBLE_EQ(sensing_kernel(0.0, 0.005), 1.0);
  EXPECT_NEAR(sensing_kernel(400.0, 0.005), std::exp(-2.0), 1e-15);
}

}  // namespace
}  // namespace hazardscout
