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

#include "hazardscout/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "hazardscout/error.hpp"

namespace hazardscout {

double evaluate_mixture(std::span<const Cluster> clusters, const Point& x) {
  double sum = 0.0;
  for (const auto& c : clusters) {
    const double d2 = (x - c.center).squaredNorm();
    sum += c.amplitude * std::exp(-d2 / (2.0 * c.spread * c.spread));
  }
  return std::min(1.0, sum);
}

double RiskField::at(const Point& x) const {
  return evaluate_mixture(clusters, x);
}

RiskField rasterize_risk_field(std::vector<Cluster> clusters,
                               const Grid& grid) {
  RiskField field;
  field.clusters = std::move(clusters);
  field.p_true.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    field.p_true[i] = evaluate_mixture(field.clusters, grid.center(i));
  }
  return field;
}

RiskField synthesize_risk_field(const MissionConfig& cfg, const Grid& grid,
                                Rng& rng) {
  if (cfg.n_clusters < 1) throw InvalidArgument("need at least one cluster");
  const Domain& d = cfg.domain;
  std::uniform_real_distribution<double> ux(d.x_min + cfg.cluster_margin,
                                            d.x_max - cfg.cluster_margin);
  std::uniform_real_distribution<double> uy(d.y_min + cfg.cluster_margin,
                                            d.y_max - cfg.cluster_margin);
  std::vector<Cluster> clusters;
  clusters.reserve(cfg.n_clusters);
  for (int k = 0; k < cfg.n_clusters; ++k) {
    Cluster c;
    c.center.x() = ux(rng);
    c.center.y() = uy(rng);
    c.spread = cfg.cluster_spread;
    c.amplitude = cfg.cluster_amplitude;
    clusters.push_back(c);
  }
  return rasterize_risk_field(std::move(clusters), grid);
}

ReportSet generate_reports(std::span<const Cluster> clusters, int n_hidden,
                           double noise_std, const MissionConfig& cfg,
                           Rng& rng) {
  const int n = static_cast<int>(clusters.size());
  if (n_hidden < 0 || n_hidden >= n) {
    throw InvalidArgument("n_hidden must satisfy 0 <= n_hidden < n_clusters");
  }
  // Partial Fisher-Yates: the first n_hidden entries are the hidden ones.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int k = 0; k < n_hidden; ++k) {
    std::uniform_int_distribution<int> pick(k, n - 1);
    std::swap(order[k], order[pick(rng)]);
  }
  std::vector<bool> hidden(n, false);
  for (int k = 0; k < n_hidden; ++k) hidden[order[k]] = true;

  ReportSet out;
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    if (hidden[k]) {
      out.hidden_centers.push_back(clusters[k].center);
      continue;
    }
    Point c = clusters[k].center;
    if (noise_std > 0) {
      c.x() += noise_std * noise(rng);
      c.y() += noise_std * noise(rng);
    }
    RoiReport r;
    r.center = cfg.domain.clamp(c);
    r.sigma = cfg.report_sigma;
    r.strength = cfg.report_strength;
    out.reports.push_back(r);
  }
  return out;
}

BeliefGrid initial_belief(std::span<const RoiReport> reports,
                          const MissionConfig& cfg,
                          std::shared_ptr<const Grid> grid) {
  if (!grid || grid->size() == 0) throw InvalidArgument("empty grid");
  const double base = log_odds(cfg.p_base);
  std::vector<double> prob(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double l = base;
    for (const auto& r : reports) {
      const double d2 = (grid->center(i) - r.center).squaredNorm();
      l += r.strength * std::exp(-d2 / (2.0 * r.sigma * r.sigma));
    }
    prob[i] = logistic(std::clamp(l, -kLogOddsLimit, kLogOddsLimit));
  }
  return BeliefGrid(std::move(grid), prob, cfg.initial_variance);
}

ScenarioInstance make_scenario(const MissionConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ScenarioInstance inst;
  inst.seed = seed;
  inst.grid = std::make_shared<const Grid>(cfg.domain, cfg.grid_nx,
                                           cfg.grid_ny);
  inst.depot = cfg.depot();
  Rng rng = make_stream(seed, Stream::kInstance);
  inst.truth = synthesize_risk_field(cfg, *inst.grid, rng);
  auto reports = generate_reports(inst.truth.clusters, cfg.n_hidden,
                                  cfg.prior_noise, cfg, rng);
  inst.reports = std::move(reports.reports);
  inst.hidden_centers = std::move(reports.hidden_centers);
  return inst;
}

namespace {

// FNV-1a over raw bytes.
void mix(std::uint64_t* h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    *h ^= p[i];
    *h *= 1099511628211ULL;
  }
}

void mix_double(std::uint64_t* h, double v) { mix(h, &v, sizeof v); }

}  // namespace

std::uint64_t instance_hash(const ScenarioInstance& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& c : inst.truth.clusters) {
    mix_double(&h, c.center.x());
    mix_double(&h, c.center.y());
    mix_double(&h, c.spread);
    mix_double(&h, c.amplitude);
  }
  for (const auto& r : inst.reports) {
    mix_double(&h, r.center.x());
    mix_double(&h, r.center.y());
    mix_double(&h, r.sigma);
    mix_double(&h, r.strength);
  }
  mix_double(&h, inst.depot.x());
  mix_double(&h, inst.depot.y());
  return h;
}

}  // namespace hazardscout
