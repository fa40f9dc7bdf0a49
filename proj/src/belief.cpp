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

#include "hazardscout/belief.hpp"

#include <algorithm>
#include <cmath>

#include "hazardscout/config.hpp"
#include "hazardscout/error.hpp"

namespace hazardscout {

double logistic(double l) {
  if (l >= 0) return 1.0 / (1.0 + std::exp(-l));
  const double e = std::exp(l);
  return e / (1.0 + e);
}

double log_odds(double b) {
  if (!(b > 0.0 && b < 1.0)) {
    throw InvalidArgument("log_odds requires a probability in (0, 1)");
  }
  return std::log(b) - std::log1p(-b);
}

SensorModel SensorModel::from_config(const MissionConfig& cfg) {
  SensorModel s;
  s.mu0 = cfg.mu0;
  s.kappa = cfg.kappa;
  s.beta_s = cfg.beta_s;
  s.sigma_y = cfg.sigma_y;
  s.r_upd = cfg.r_upd;
  s.y_th = cfg.y_th;
  return s;
}

BeliefGrid::BeliefGrid(std::shared_ptr<const Grid> grid,
                       std::span<const double> prob, double variance)
    : grid_(std::move(grid)) {
  if (!grid_) throw InvalidArgument("belief requires a grid");
  if (prob.size() != grid_->size()) {
    throw GridMismatch("belief probabilities do not match the grid size");
  }
  if (variance < 0) throw InvalidArgument("variance must be nonnegative");
  prob_.resize(prob.size());
  logit_.resize(prob.size());
  var_.assign(prob.size(), variance);
  for (std::size_t i = 0; i < prob.size(); ++i) set_logit(i, log_odds(prob[i]));
}

void BeliefGrid::set_logit(std::size_t i, double l) {
  logit_[i] = std::clamp(l, -kLogOddsLimit, kLogOddsLimit);
  prob_[i] = logistic(logit_[i]);
}

std::vector<std::size_t> update_neighborhood(const Point& x, const Grid& grid,
                                             double r_upd) {
  if (!(r_upd > 0)) throw InvalidArgument("r_upd must be positive");
  return grid.cells_within(x, r_upd);
}

namespace {

// Kernel weights over the neighborhood and their sum.
double neighborhood_weights(const Grid& grid, const Point& x,
                            std::span<const std::size_t> cells, double beta_s,
                            std::vector<double>* weights) {
  weights->resize(cells.size());
  double sum = 0.0;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    (*weights)[n] =
        sensing_kernel((grid.center(cells[n]) - x).squaredNorm(), beta_s);
    sum += (*weights)[n];
  }
  return sum;
}

}  // namespace

double predict_measurement(const BeliefGrid& belief, const Point& x,
                           const SensorModel& sensor) {
  const auto cells = update_neighborhood(x, belief.grid(), sensor.r_upd);
  if (cells.empty()) throw EmptyNeighborhood("no grid cell within r_upd");
  std::vector<double> w;
  const double wsum =
      neighborhood_weights(belief.grid(), x, cells, sensor.beta_s, &w);
  double acc = 0.0;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    acc += w[n] * belief.prob(cells[n]);
  }
  return sensor.mu0 + sensor.kappa * acc / wsum;
}

std::vector<std::size_t> ekf_update(BeliefGrid& belief, const Measurement& m,
                                    const SensorModel& sensor) {
  const auto cells =
      update_neighborhood(m.position, belief.grid(), sensor.r_upd);
  if (cells.empty()) throw EmptyNeighborhood("no grid cell within r_upd");
  std::vector<double> w;
  const double wsum = neighborhood_weights(belief.grid(), m.position, cells,
                                           sensor.beta_s, &w);

  std::vector<double> jac(cells.size());
  double predicted = 0.0;
  double innovation_var = sensor.sigma_y * sensor.sigma_y;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    const double b = belief.prob(cells[n]);
    predicted += w[n] * b;
    jac[n] = sensor.kappa * w[n] * b * (1.0 - b) / wsum;
    innovation_var += belief.variance(cells[n]) * jac[n] * jac[n];
  }
  predicted = sensor.mu0 + sensor.kappa * predicted / wsum;
  const double innovation = m.value - predicted;

  for (std::size_t n = 0; n < cells.size(); ++n) {
    const std::size_t c = cells[n];
    const double v = belief.variance(c);
    const double gain = v * jac[n] / innovation_var;
    belief.set_logit(c, belief.logit(c) + gain * innovation);
    belief.set_variance(c, std::max(0.0, v - gain * jac[n] * v));
  }
  return cells;
}

void diffuse(BeliefGrid& belief, double rate) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw InvalidArgument("diffusion rate must be in [0, 1)");
  }
  if (rate == 0.0) return;
  const Grid& g = belief.grid();
  const std::vector<double> old = belief.logits();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      double sum = 0.0;
      int count = 0;
      if (i > 0) sum += old[g.index(i - 1, j)], ++count;
      if (i + 1 < g.nx()) sum += old[g.index(i + 1, j)], ++count;
      if (j > 0) sum += old[g.index(i, j - 1)], ++count;
      if (j + 1 < g.ny()) sum += old[g.index(i, j + 1)], ++count;
      const std::size_t c = g.index(i, j);
      if (count == 0) continue;
      belief.set_logit(c, (1.0 - rate) * old[c] + rate * sum / count);
    }
  }
}

double simulate_measurement(std::span<const double> p_true, const Grid& grid,
                            const Point& x, const SensorModel& sensor,
                            Rng& rng) {
  if (p_true.size() != grid.size()) {
    throw GridMismatch("truth field does not match the grid size");
  }
  const auto cells = update_neighborhood(x, grid, sensor.r_upd);
  if (cells.empty()) throw EmptyNeighborhood("no grid cell within r_upd");
  std::vector<double> w;
  const double wsum = neighborhood_weights(grid, x, cells, sensor.beta_s, &w);
  double acc = 0.0;
  for (std::size_t n = 0; n < cells.size(); ++n) acc += w[n] * p_true[cells[n]];
  double y = sensor.mu0 + sensor.kappa * acc / wsum;
  if (sensor.sigma_y > 0) {
    std::normal_distribution<double> noise(0.0, sensor.sigma_y);
    y += noise(rng);
  }
  return y;
}

}  // namespace hazardscout
