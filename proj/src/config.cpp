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

#include "hazardscout/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hazardscout/error.hpp"

namespace hazardscout {
namespace {

using nlohmann::json;

// Keys owned by the experiment runner; tolerated in a mission config file.
const std::set<std::string> kExperimentKeys = {
    "nc_values", "nh_values", "np_values", "trials", "base_seed",
    "strategies"};

#define HS_CONFIG_FIELDS(X)                                                 \
  X(depot_x) X(depot_y) X(grid_nx) X(grid_ny) X(budget_m) X(n_clusters)     \
  X(n_hidden) X(n_pseudo) X(cluster_spread) X(cluster_amplitude)            \
  X(cluster_margin) X(prior_noise) X(p_base) X(report_strength)             \
  X(report_sigma) X(initial_variance) X(mu0) X(kappa) X(beta_s) X(sigma_y)  \
  X(r_upd) X(y_th) X(measurement_spacing) X(diffusion_rate) X(v_min)        \
  X(v_max) X(u_min) X(u_max) X(chi_max) X(v_cruise) X(alpha_rho)            \
  X(beta_rho) X(cvt_iterations) X(cvt_samples) X(cvt_mode)                  \
  X(area_only_allocation) X(spline_order) X(spline_control_points)          \
  X(spline_samples) X(opt_restarts) X(opt_max_iterations)                   \
  X(opt_constraint_tol) X(eps_b) X(delta) X(delta_psi) X(kl_eps)

json to_json_object(const MissionConfig& c) {
  json j;
  j["x_min"] = c.domain.x_min;
  j["x_max"] = c.domain.x_max;
  j["y_min"] = c.domain.y_min;
  j["y_max"] = c.domain.y_max;
#define X(name) j[#name] = c.name;
  HS_CONFIG_FIELDS(X)
#undef X
  return j;
}

template <typename T>
void read_field(const json& j, const char* key, T* out) {
  if (!j.contains(key)) return;
  try {
    *out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config key '") + key +
                          "' has the wrong type: " + e.what());
  }
}

MissionConfig from_json_object(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  std::set<std::string> known = {"x_min", "x_max", "y_min", "y_max"};
#define X(name) known.insert(#name);
  HS_CONFIG_FIELDS(X)
#undef X
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key) && !kExperimentKeys.count(key)) {
      throw InvalidArgument("unknown config key '" + key + "'");
    }
  }
  MissionConfig c;
  read_field(j, "x_min", &c.domain.x_min);
  read_field(j, "x_max", &c.domain.x_max);
  read_field(j, "y_min", &c.domain.y_min);
  read_field(j, "y_max", &c.domain.y_max);
#define X(name) read_field(j, #name, &c.name);
  HS_CONFIG_FIELDS(X)
#undef X
  c.validate();
  return c;
}

#undef HS_CONFIG_FIELDS

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw InvalidArgument(std::string("config field '") + field + "' " + what);
  }
}

}  // namespace

void MissionConfig::validate() const {
  domain.validate();
  require(domain.contains(depot()), "depot_x/depot_y", "must lie in domain");
  require(grid_nx >= 1 && grid_ny >= 1, "grid_nx/grid_ny", "must be >= 1");
  require(budget_m > 0, "budget_m", "must be positive");
  require(n_clusters >= 1, "n_clusters", "must be >= 1");
  require(n_hidden >= 0 && n_hidden < n_clusters, "n_hidden",
          "must satisfy 0 <= n_hidden < n_clusters");
  require(n_pseudo >= 0, "n_pseudo", "must be >= 0");
  require(cluster_spread > 0, "cluster_spread", "must be positive");
  require(cluster_amplitude > 0 && cluster_amplitude <= 1, "cluster_amplitude",
          "must be in (0, 1]");
  require(cluster_margin >= 0 && 2 * cluster_margin < domain.width() &&
              2 * cluster_margin < domain.height(),
          "cluster_margin", "must leave an interior region");
  require(prior_noise >= 0, "prior_noise", "must be >= 0");
  require(p_base > 0 && p_base < 1, "p_base", "must be in (0, 1)");
  require(report_strength > 0, "report_strength", "must be positive");
  require(report_sigma > 0, "report_sigma", "must be positive");
  require(initial_variance >= 0, "initial_variance", "must be >= 0");
  require(kappa > 0, "kappa", "must be positive");
  require(beta_s > 0, "beta_s", "must be positive");
  require(sigma_y > 0, "sigma_y", "must be positive");
  require(r_upd > 0, "r_upd", "must be positive");
  require(measurement_spacing > 0, "measurement_spacing", "must be positive");
  require(diffusion_rate >= 0 && diffusion_rate < 1, "diffusion_rate",
          "must be in [0, 1)");
  require(v_min > 0 && v_min < v_max, "v_min/v_max",
          "must satisfy 0 < v_min < v_max");
  require(u_min < 0 && u_max > 0, "u_min/u_max",
          "must satisfy u_min < 0 < u_max");
  require(chi_max > 0, "chi_max", "must be positive");
  require(v_cruise >= v_min && v_cruise <= v_max, "v_cruise",
          "must lie in [v_min, v_max]");
  require(alpha_rho > 0, "alpha_rho", "must be positive");
  require(beta_rho >= 0, "beta_rho", "must be >= 0");
  require(cvt_iterations >= 1, "cvt_iterations", "must be >= 1");
  require(cvt_samples >= 1, "cvt_samples", "must be >= 1");
  require(cvt_mode == "edge" || cvt_mode == "node", "cvt_mode",
          "must be 'edge' or 'node'");
  require(spline_order >= 2, "spline_order", "must be >= 2");
  require(spline_control_points >= spline_order + 1, "spline_control_points",
          "must exceed the spline order");
  require(spline_samples >= 2, "spline_samples", "must be >= 2");
  require(opt_restarts >= 1, "opt_restarts", "must be >= 1");
  require(opt_max_iterations >= 1, "opt_max_iterations", "must be >= 1");
  require(opt_constraint_tol > 0, "opt_constraint_tol", "must be positive");
  require(eps_b >= 0, "eps_b", "must be >= 0");
  require(delta > 0, "delta", "must be positive");
  require(delta_psi >= 0, "delta_psi", "must be >= 0");
  require(kl_eps > 0 && kl_eps < 0.5, "kl_eps", "must be in (0, 0.5)");
}

std::string config_to_json(const MissionConfig& cfg) {
  return to_json_object(cfg).dump(2);
}

MissionConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json_object(j);
}

MissionConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void save_config(const MissionConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write config file '" + path + "'");
  out << config_to_json(cfg) << "\n";
}

}  // namespace hazardscout
