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

#include <string>

#include "hazardscout/geometry.hpp"

namespace hazardscout {

/// Every scalar a mission needs. Defaults reproduce the desk-scale
/// experiment setup; values the original setup leaves open carry the
/// documented project defaults. JSON keys match the field names.
struct MissionConfig {
  // Area and depot.
  Domain domain{};
  double depot_x = 0.0;
  double depot_y = 0.0;
  int grid_nx = 50;
  int grid_ny = 50;

  // Flight distance budget D_m, meters.
  double budget_m = 5000.0;

  // Scenario structure.
  int n_clusters = 8;
  int n_hidden = 3;
  int n_pseudo = 3;
  double cluster_spread = 160.0;
  double cluster_amplitude = 0.9;
  double cluster_margin = 100.0;
  double prior_noise = 100.0;

  // Prior belief construction.
  double p_base = 0.05;
  double report_strength = 2.0;
  double report_sigma = 160.0;
  double initial_variance = 1.0;

  // Sensor.
  double mu0 = 0.0;
  double kappa = 0.8;
  double beta_s = 0.005;
  double sigma_y = 0.10;
  double r_upd = 20.0;
  double y_th = 0.6;
  double measurement_spacing = 5.0;
  double diffusion_rate = 0.0;

  // Vehicle limits.
  double v_min = 0.5;
  double v_max = 10.0;
  double u_min = -2.0;
  double u_max = 2.0;
  double chi_max = 0.1;
  double v_cruise = 5.0;

  // Pseudo-node CVT.
  double alpha_rho = 0.1;
  double beta_rho = 1.0;
  int cvt_iterations = 15;
  int cvt_samples = 5000;
  std::string cvt_mode = "edge";  // "edge" | "node"

  // Budget allocation.
  bool area_only_allocation = false;

  // Spline and optimizer.
  int spline_order = 4;
  int spline_control_points = 8;
  int spline_samples = 40;
  int opt_restarts = 3;
  int opt_max_iterations = 300;
  double opt_constraint_tol = 1e-3;

  // Replanning.
  double eps_b = 0.01;
  double delta = 50.0;
  double delta_psi = 0.0;

  // Metrics.
  double kl_eps = 1e-6;

  Point depot() const { return {depot_x, depot_y}; }

  /// Throws InvalidArgument naming the first offending field.
  void validate() const;
};

MissionConfig load_config(const std::string& path);
void save_config(const MissionConfig& cfg, const std::string& path);
std::string config_to_json(const MissionConfig& cfg);
MissionConfig config_from_json(const std::string& text);

}  // namespace hazardscout
