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

#include "hazardscout/routing.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

#include "hazardscout/error.hpp"

namespace hazardscout {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kDepot:
      return "depot";
    case NodeKind::kRoi:
      return "roi";
    case NodeKind::kPseudo:
      return "pseudo";
  }
  return "unknown";
}

std::vector<Segment> Route::edges() const {
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    Segment s{nodes[i].position, nodes[i + 1].position};
    if (!s.degenerate()) out.push_back(s);
  }
  return out;
}

double Route::length() const {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    len += (nodes[i + 1].position - nodes[i].position).norm();
  }
  return len;
}

std::size_t Route::count(NodeKind kind) const {
  return std::count_if(nodes.begin(), nodes.end(),
                       [kind](const RouteNode& n) { return n.kind == kind; });
}

double route_length(const Route& route) { return route.length(); }

Eigen::MatrixXd distance_matrix(std::span<const Point> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (points[i] - points[j]).norm();
    }
  }
  return d;
}

double tour_length(const Eigen::MatrixXd& dist, std::span<const int> order) {
  if (order.empty()) return 0.0;
  double len = dist(0, order.front());
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    len += dist(order[i], order[i + 1]);
  }
  return len + dist(order.back(), 0);
}

std::vector<int> held_karp_order(const Eigen::MatrixXd& dist) {
  const int n = static_cast<int>(dist.rows()) - 1;
  if (n <= 0) return {};
  const std::uint32_t full = (1u << n) - 1u;
  const double inf = std::numeric_limits<double>::infinity();
  // cost[mask * n + j]: shortest depot path covering `mask`, ending at j.
  std::vector<double> cost(static_cast<std::size_t>(full + 1) * n, inf);
  std::vector<int> parent(cost.size(), -1);
  for (int j = 0; j < n; ++j) cost[(1u << j) * n + j] = dist(0, j + 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const double cj = cost[mask * n + j];
      if (cj == inf) continue;
      for (int k = 0; k < n; ++k) {
        if (mask & (1u << k)) continue;
        const std::uint32_t next = mask | (1u << k);
        const double c = cj + dist(j + 1, k + 1);
        if (c < cost[next * n + k]) {
          cost[next * n + k] = c;
          parent[next * n + k] = j;
        }
      }
    }
  }
  int last = 0;
  double best = inf;
  for (int j = 0; j < n; ++j) {
    const double c = cost[full * n + j] + dist(j + 1, 0);
    if (c < best) {
      best = c;
      last = j;
    }
  }
  std::vector<int> order;
  std::uint32_t mask = full;
  for (int j = last; j >= 0;) {
    order.push_back(j + 1);
    const int p = parent[mask * n + j];
    mask &= ~(1u << j);
    j = p;
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::vector<int> nearest_neighbor_order(const Eigen::MatrixXd& dist) {
  const int n = static_cast<int>(dist.rows()) - 1;
  std::vector<bool> used(n + 1, false);
  std::vector<int> order;
  int at = 0;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int j = 1; j <= n; ++j) {
      if (!used[j] && (best < 0 || dist(at, j) < dist(at, best))) best = j;
    }
    used[best] = true;
    order.push_back(best);
    at = best;
  }
  return order;
}

void two_opt(const Eigen::MatrixXd& dist, std::vector<int>* order) {
  // Work on the closed sequence depot, order..., depot.
  std::vector<int> tour;
  tour.reserve(order->size() + 2);
  tour.push_back(0);
  tour.insert(tour.end(), order->begin(), order->end());
  tour.push_back(0);
  const std::size_t m = tour.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 3 < m; ++i) {
      for (std::size_t k = i + 2; k + 1 < m; ++k) {
        const double before =
            dist(tour[i], tour[i + 1]) + dist(tour[k], tour[k + 1]);
        const double after =
            dist(tour[i], tour[k]) + dist(tour[i + 1], tour[k + 1]);
        if (after < before - 1e-10) {
          std::reverse(tour.begin() + i + 1, tour.begin() + k + 1);
          improved = true;
        }
      }
    }
  }
  order->assign(tour.begin() + 1, tour.end() - 1);
}

Route solve_route(const RouteNode& depot, std::span<const RouteNode> nodes,
                  double budget) {
  std::vector<Point> points;
  points.reserve(nodes.size() + 1);
  points.push_back(depot.position);
  for (const auto& n : nodes) {
    if (n.position == depot.position) {
      throw InvalidArgument("route nodes must be distinct from the depot");
    }
    points.push_back(n.position);
  }
  const Eigen::MatrixXd dist = distance_matrix(points);

  std::vector<int> order;
  if (static_cast<int>(nodes.size()) <= kExactRouteLimit) {
    order = held_karp_order(dist);
  } else {
    order = nearest_neighbor_order(dist);
    two_opt(dist, &order);
  }
  if (order.size() >= 2 &&
      nodes[order.back() - 1].id < nodes[order.front() - 1].id) {
    std::reverse(order.begin(), order.end());
  }

  Route route;
  RouteNode d = depot;
  d.kind = NodeKind::kDepot;
  route.nodes.push_back(d);
  for (int idx : order) route.nodes.push_back(nodes[idx - 1]);
  route.nodes.push_back(d);

  const double len = route.length();
  if (len > budget) {
    std::ostringstream os;
    os << "shortest tour found is " << len << " m, budget is " << budget
       << " m";
    throw BudgetInfeasible(os.str());
  }
  return route;
}

}  // namespace hazardscout
