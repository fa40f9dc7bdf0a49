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

#include <span>
#include <vector>

#include "hazardscout/geometry.hpp"
#include "hazardscout/rng.hpp"
#include "hazardscout/routing.hpp"

namespace hazardscout {

struct CvtConfig {
  int n_pseudo = 3;
  double alpha_rho = 0.1;
  double beta_rho = 1.0;
  int iterations = 15;
  int samples_per_iter = 5000;

  /// Node-based baseline: the same Lloyd iteration with uniform density.
  CvtConfig node_based() const {
    CvtConfig c = *this;
    c.beta_rho = 0.0;
    return c;
  }
};

/// rho(x) = alpha + beta * distance from x to the closest route edge.
double edge_density(const Point& x, std::span<const Segment> route_edges,
                    double alpha_rho, double beta_rho);

/// Monte Carlo Lloyd iteration for pseudo-node placement. ROI centers act
/// as fixed generators; only the pseudo-nodes move, each to the
/// density-weighted centroid of the samples it wins. The density always uses
/// the pre-augmentation `route_edges`.
std::vector<Point> cvt_pseudo_nodes(std::span<const Point> roi_centers,
                                    std::span<const Segment> route_edges,
                                    const Domain& domain, const CvtConfig& cfg,
                                    Rng& rng);

/// Re-solves the tour over the route's ROI nodes plus the pseudo-nodes.
/// Pseudo-node ids continue after the largest existing id.
Route augment_route(const Route& route, std::span<const Point> pseudo_nodes,
                    double budget);

}  // namespace hazardscout
