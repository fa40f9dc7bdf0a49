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

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hazardscout/geometry.hpp"
#include "hazardscout/rng.hpp"

namespace hazardscout {

struct MissionConfig;

/// Log-odds are clamped to this magnitude after every update.
inline constexpr double kLogOddsLimit = 15.0;

double logistic(double l);
/// Throws InvalidArgument unless 0 < b < 1.
double log_odds(double b);

/// Sensor and update constants shared by the filter, the simulator and the
/// planner objectives.
struct SensorModel {
  double mu0 = 0.0;
  double kappa = 0.8;
  double beta_s = 0.005;
  double sigma_y = 0.1;
  double r_upd = 20.0;
  double y_th = 0.6;

  static SensorModel from_config(const MissionConfig& cfg);
};

/// K(d) = exp(-beta_s d^2), taking the squared distance. The filter, the
/// measurement simulator and both path scores call this one function.
inline double sensing_kernel(double dist_sq, double beta_s) {
  return std::exp(-beta_s * dist_sq);
}

/// Grid belief: probability, log-odds and logit-space variance per cell.
class BeliefGrid {
 public:
  BeliefGrid(std::shared_ptr<const Grid> grid, std::span<const double> prob,
             double variance);

  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
  std::size_t size() const { return prob_.size(); }

  double prob(std::size_t i) const { return prob_[i]; }
  double logit(std::size_t i) const { return logit_[i]; }
  double variance(std::size_t i) const { return var_[i]; }
  const std::vector<double>& probs() const { return prob_; }
  const std::vector<double>& logits() const { return logit_; }
  const std::vector<double>& variances() const { return var_; }

  /// Sets the log-odds of one cell (clamped) and refreshes its probability.
  void set_logit(std::size_t i, double l);
  void set_variance(std::size_t i, double v) { var_[i] = v; }

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> prob_;
  std::vector<double> logit_;
  std::vector<double> var_;
};

struct Measurement {
  Point position;
  double value = 0.0;
};

/// Cells within r_upd of x (inclusive), ascending. May be empty.
std::vector<std::size_t> update_neighborhood(const Point& x, const Grid& grid,
                                             double r_upd);

/// Kernel-weighted mean belief around x, scaled and offset by the sensor
/// model. Throws EmptyNeighborhood when no cell is within r_upd.
double predict_measurement(const BeliefGrid& belief, const Point& x,
                           const SensorModel& sensor);

/// Extended Kalman update in log-odds space restricted to the update
/// neighborhood of the measurement. Cells outside are untouched. Returns the
/// updated cell indices.
std::vector<std::size_t> ekf_update(BeliefGrid& belief, const Measurement& m,
                                    const SensorModel& sensor);

/// One explicit 4-neighbor smoothing step on the log-odds. Boundary cells
/// average over the neighbors they have. Variance is left alone.
void diffuse(BeliefGrid& belief, double rate);

/// Noisy reading of the true field at x: the same kernel-weighted mean the
/// filter predicts, evaluated on p_true, plus N(0, sigma_y^2) noise.
double simulate_measurement(std::span<const double> p_true, const Grid& grid,
                            const Point& x, const SensorModel& sensor,
                            Rng& rng);

}  // namespace hazardscout
