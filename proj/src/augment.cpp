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

#include "hazardscout/augment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hazardscout/error.hpp"

namespace hazardscout {

double edge_density(const Point& x, std::span<const Segment> route_edges,
                    double alpha_rho, double beta_rho) {
  if (route_edges.empty()) throw InvalidArgument("density needs route edges");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : route_edges) {
    best = std::min(best, point_segment_distance_sq(x, e));
  }
  return alpha_rho + beta_rho * std::sqrt(best);
}

std::vector<Point> cvt_pseudo_nodes(std::span<const Point> roi_centers,
                                    std::span<const Segment> route_edges,
                                    const Domain& domain, const CvtConfig& cfg,
                                    Rng& rng) {
  if (cfg.n_pseudo <= 0) return {};
  if (cfg.iterations < 1 || cfg.samples_per_iter < 1) {
    throw InvalidArgument("CVT needs at least one iteration and sample");
  }
  const bool uniform = cfg.beta_rho == 0.0;
  if (!uniform && route_edges.empty()) {
    throw InvalidArgument("edge-based density needs route edges");
  }
  std::uniform_real_distribution<double> ux(domain.x_min, domain.x_max);
  std::uniform_real_distribution<double> uy(domain.y_min, domain.y_max);

  std::vector<Point> pseudo(cfg.n_pseudo);
  for (auto& p : pseudo) {
    p.x() = ux(rng);
    p.y() = uy(rng);
  }

  const std::size_t n_roi = roi_centers.size();
  std::vector<Point> weighted_sum(pseudo.size());
  std::vector<double> weight(pseudo.size());
  for (int h = 0; h < cfg.iterations; ++h) {
    std::fill(weighted_sum.begin(), weighted_sum.end(), Point::Zero());
    std::fill(weight.begin(), weight.end(), 0.0);
    for (int s = 0; s < cfg.samples_per_iter; ++s) {
      const Point x(ux(rng), uy(rng));
      // Nearest generator; ROI centers come first so they win ties.
      double best = std::numeric_limits<double>::infinity();
      std::size_t owner = 0;
      for (std::size_t g = 0; g < n_roi; ++g) {
        const double d = (x - roi_centers[g]).squaredNorm();
        if (d < best) best = d, owner = g;
      }
      for (std::size_t g = 0; g < pseudo.size(); ++g) {
        const double d = (x - pseudo[g]).squaredNorm();
        if (d < best) best = d, owner = n_roi + g;
      }
      if (owner < n_roi) continue;
      const double rho =
          uniform ? cfg.alpha_rho
                  : edge_density(x, route_edges, cfg.alpha_rho, cfg.beta_rho);
      weighted_sum[owner - n_roi] += rho * x;
      weight[owner - n_roi] += rho;
    }
    for (std::size_t g = 0; g < pseudo.size(); ++g) {
      if (weight[g] > 0) pseudo[g] = weighted_sum[g] / weight[g];
    }
  }
  return pseudo;
}

Route augment_route(const Route& route, std::span<const Point> pseudo_nodes,
                    double budget) {
  if (route.nodes.size() < 2 || route.nodes.front().kind != NodeKind::kDepot) {
    throw InvalidArgument("augment_route needs a depot-anchored route");
  }
  if (pseudo_nodes.empty()) return route;
  std::vector<RouteNode> nodes;
  int next_id = route.nodes.front().id;
  for (std::size_t i = 1; i + 1 < route.nodes.size(); ++i) {
    nodes.push_back(route.nodes[i]);
    next_id = std::max(next_id, route.nodes[i].id);
  }
  for (const auto& p : pseudo_nodes) {
    nodes.push_back({p, NodeKind::kPseudo, ++next_id});
  }
  // Keep the solver input in id order so results do not depend on the
  // visiting order of the input route.
  std::sort(nodes.begin(), nodes.end(),
            [](const RouteNode& a, const RouteNode& b) { return a.id < b.id; });
  return solve_route(route.nodes.front(), nodes, budget);
}

}  // namespace hazardscout
