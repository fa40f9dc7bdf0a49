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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hazardscout/geometry.hpp"

namespace hazardscout {

enum class NodeKind { kDepot, kRoi, kPseudo };

const char* to_string(NodeKind kind);

struct RouteNode {
  Point position;
  NodeKind kind = NodeKind::kRoi;
  int id = 0;
};

/// Closed depot-anchored tour: nodes.front() and nodes.back() are the depot.
struct Route {
  std::vector<RouteNode> nodes;

  /// Consecutive node pairs as segments; zero-length pairs are skipped.
  std::vector<Segment> edges() const;
  double length() const;
  std::size_t count(NodeKind kind) const;
};

/// Tours up to this many non-depot nodes are solved exactly.
inline constexpr int kExactRouteLimit = 12;

Eigen::MatrixXd distance_matrix(std::span<const Point> points);

/// Minimum-length closed tour from the depot through every node. Exact
/// (Held-Karp) up to kExactRouteLimit nodes, nearest neighbour plus 2-opt
/// beyond. Between a tour and its reverse, the one whose first visited node
/// has the smaller id is returned. Throws BudgetInfeasible when the best
/// tour found is longer than `budget`.
Route solve_route(const RouteNode& depot, std::span<const RouteNode> nodes,
                  double budget);

double route_length(const Route& route);

/// Order (indices into `dist` rows 1..n, depot at 0) of the exact optimum.
std::vector<int> held_karp_order(const Eigen::MatrixXd& dist);

/// Nearest-neighbour tour order from the depot (row 0).
std::vector<int> nearest_neighbor_order(const Eigen::MatrixXd& dist);

/// Applies 2-opt moves until no improving move is left.
void two_opt(const Eigen::MatrixXd& dist, std::vector<int>* order);

/// Closed tour length for a depot-anchored visiting order.
double tour_length(const Eigen::MatrixXd& dist, std::span<const int> order);

}  // namespace hazardscout
