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
#include <memory>
#include <span>
#include <vector>

#include "hazardscout/belief.hpp"
#include "hazardscout/config.hpp"
#include "hazardscout/geometry.hpp"
#include "hazardscout/rng.hpp"

namespace hazardscout {

struct Cluster {
  Point center;
  double spread = 160.0;
  double amplitude = 0.9;
};

/// Ground-truth hazard field: a clamped mixture of isotropic Gaussian
/// bumps, rasterized on the mission grid. Evaluation only.
struct RiskField {
  std::vector<Cluster> clusters;
  std::vector<double> p_true;  // per grid cell, in [0, 1]

  /// Mixture value at an arbitrary point.
  double at(const Point& x) const;
};

/// Reported region of interest: a noisy center with its prior bump shape.
struct RoiReport {
  Point center;
  double sigma = 160.0;
  double strength = 2.0;
};

struct ScenarioInstance {
  std::shared_ptr<const Grid> grid;
  RiskField truth;
  std::vector<RoiReport> reports;
  std::vector<Point> hidden_centers;
  Point depot;
  std::uint64_t seed = 0;
};

double evaluate_mixture(std::span<const Cluster> clusters, const Point& x);

RiskField rasterize_risk_field(std::vector<Cluster> clusters, const Grid& grid);

/// Draws n_clusters centers uniformly in the domain shrunk by
/// cluster_margin, then rasterizes the field.
RiskField synthesize_risk_field(const MissionConfig& cfg, const Grid& grid,
                                Rng& rng);

struct ReportSet {
  std::vector<RoiReport> reports;
  std::vector<Point> hidden_centers;
};

/// Hides n_hidden clusters chosen uniformly; perturbs the remaining centers
/// with isotropic Gaussian noise and clamps them into the domain. Reports
/// keep the cluster order.
ReportSet generate_reports(std::span<const Cluster> clusters, int n_hidden,
                           double noise_std, const MissionConfig& cfg,
                           Rng& rng);

/// Prior belief: logistic of the background log-odds plus one Gaussian
/// log-odds bump per report.
BeliefGrid initial_belief(std::span<const RoiReport> reports,
                          const MissionConfig& cfg,
                          std::shared_ptr<const Grid> grid);

/// Full instance from (config, seed). Uses only the instance PRNG stream so
/// every strategy sees the same instance.
ScenarioInstance make_scenario(const MissionConfig& cfg, std::uint64_t seed);

/// Stable 64-bit digest of an instance's clusters, reports and depot.
std::uint64_t instance_hash(const ScenarioInstance& inst);

}  // namespace hazardscout
