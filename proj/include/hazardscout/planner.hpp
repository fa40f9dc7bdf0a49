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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hazardscout/belief.hpp"
#include "hazardscout/geometry.hpp"
#include "hazardscout/spline.hpp"

namespace hazardscout {

struct MissionConfig;

struct VehicleLimits {
  double v_min = 0.5;
  double v_max = 10.0;
  double u_min = -2.0;
  double u_max = 2.0;
  double chi_max = 0.1;

  static VehicleLimits from_config(const MissionConfig& cfg);
  void validate() const;
};

/// Probability that one sample at distance `d` from a cell produces an
/// above-threshold response.
double detection_probability(double d, const SensorModel& sensor);
double detection_probability_sq(double d_sq, const SensorModel& sensor);

/// 1 - prod_j (1 - pi_j) for a single cell.
double path_detection_score(std::span<const Point> samples, const Point& cell,
                            const SensorModel& sensor);

/// Belief-weighted detection score over a fixed cell set. Far sample/cell
/// pairs blend smoothly into the far-field probability pi(inf); the blend
/// starts where the remaining difference is below 1e-9.
class DetectionObjective {
 public:
  DetectionObjective(const BeliefGrid& belief,
                     std::span<const std::size_t> cells,
                     const SensorModel& sensor);

  double value(std::span<const Point> samples) const;
  /// Value plus d(value)/d(sample_j) for every sample.
  double value_and_gradient(std::span<const Point> samples,
                            std::vector<Point>* grad) const;
  double cutoff_radius() const { return std::sqrt(outer_sq_); }

 private:
  double evaluate(std::span<const Point> samples,
                  std::vector<Point>* grad) const;

  const BeliefGrid& belief_;
  std::vector<std::size_t> cells_;
  std::vector<int> local_;  // grid index -> position in cells_, or -1
  SensorModel sensor_;
  double inner_sq_;
  double outer_sq_;
  double pi_far_;
  double log_miss_far_;
};

double expected_detection_objective(std::span<const Point> samples,
                                    const BeliefGrid& belief,
                                    std::span<const std::size_t> cells,
                                    const SensorModel& sensor);

/// Information-gain score used to accept replans.
double eig_score(std::span<const Point> samples, const BeliefGrid& belief,
                 std::span<const std::size_t> cells,
                 const SensorModel& sensor);

struct EdgeTask {
  Point start = Point::Zero();
  Point goal = Point::Zero();
  Point entry_velocity = Point::Zero();
  Point exit_velocity = Point::Zero();
  std::vector<std::size_t> cells;  // edge cell set
  double cap = 0.0;                // path length cap, m
  const BeliefGrid* belief = nullptr;
};

struct OptimizerConfig {
  int restarts = 3;
  int max_iterations = 300;
  double constraint_tol = 1e-3;
  double mu_initial = 10.0;
  double mu_growth = 10.0;
  double mu_max = 1e5;
  double initial_step = 5.0;  // m
  double max_step = 50.0;     // m
  double min_step = 1e-3;     // m
  double kinematic_margin = 0.02;
  double length_margin = 0.005;
  double smoothing = 0.25;     // kernel widening factor for the first stage
  int screen_iterations = 10;  // short ascent per pool seed before ranking
  int order = 4;
  int control_points = 8;
  int samples = 40;
  double v_cruise = 5.0;
  Domain domain{};
  SensorModel sensor{};
  std::uint64_t seed = 0;

  static OptimizerConfig from_config(const MissionConfig& cfg);
};

struct FeasibilityReport {
  bool feasible = true;
  double min_speed = 0.0;
  double max_speed = 0.0;
  double max_abs_turn_rate = 0.0;
  double max_abs_curvature = 0.0;
  double length = 0.0;
  std::string reason;
};

/// Checks kinematic limits at `n_checks` uniform times, domain containment
/// and arc length <= cap.
FeasibilityReport check_feasibility(const SplinePath& path,
                                    const VehicleLimits& limits, double cap,
                                    const Domain& domain, int n_checks,
                                    double tol);

struct PlannedPath {
  SplinePath path;
  double psi = 0.0;
  bool fallback = false;
};

/// Best feasible optimized candidate, without the straight-line fallback.
/// Endpoint positions and velocities are fixed by construction.
std::optional<PlannedPath> optimize_candidates(const EdgeTask& task,
                                               const VehicleLimits& limits,
                                               const OptimizerConfig& cfg);

/// Optimized path, or the straight line when no candidate beats it.
PlannedPath optimize_edge_path(const EdgeTask& task,
                               const VehicleLimits& limits,
                               const OptimizerConfig& cfg);

}  // namespace hazardscout
