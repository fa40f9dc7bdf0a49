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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hazardscout/augment.hpp"
#include "hazardscout/error.hpp"
#include "hazardscout/routing.hpp"

namespace hazardscout {
namespace {

const RouteNode kDepot{{0, 0}, NodeKind::kDepot, 0};

std::vector<RouteNode> rois(std::initializer_list<Point> pts) {
  std::vector<RouteNode> out;
  int id = 1;
  for (const auto& p : pts) out.push_back({p, NodeKind::kRoi, id++});
  return out;
}

double brute_force(const RouteNode& depot, const std::vector<RouteNode>& nodes) {
  std::vector<int> perm(nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1e300;
  do {
    double len = 0;
    Point at = depot.position;
    for (int i : perm) {
      len += (nodes[i].position - at).norm();
      at = nodes[i].position;
    }
    len += (depot.position - at).norm();
    best = std::min(best, len);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(DistanceMatrix, Basics) {
  const std::vector<Point> p{{0, 0}, {3, 4}, {-1, 7}};
  const auto d = distance_matrix(p);
  EXPECT_DOUBLE_EQ(d(0, 1), 5.0);
  for (int i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(d(i, i), 0.0);
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(d(i, j), d(j, i));
  }
}

TEST(SolveRoute, SquarePerimeterCanonical) {
  const auto n = rois({{10, 0}, {10, 10}, {0, 10}});
  const Route r = solve_route(kDepot, n, 100);
  EXPECT_NEAR(r.length(), 40.0, 1e-12);
  ASSERT_EQ(r.nodes.size(), 5u);
  EXPECT_EQ(r.nodes.front().kind, NodeKind::kDepot);
  EXPECT_EQ(r.nodes.back().kind, NodeKind::kDepot);
  EXPECT_EQ(r.nodes[1].id, 1);
  EXPECT_EQ(r.nodes[2].id, 2);
  EXPECT_EQ(r.nodes[3].id, 3);
}

TEST(SolveRoute, OutAndBack) {
  const auto n = rois({{30, 40}});
  EXPECT_NEAR(solve_route(kDepot, n, 100).length(), 100.0, 1e-12);
  EXPECT_THROW(solve_route(kDepot, n, 99), BudgetInfeasible);
}

TEST(SolveRoute, DepotOnlyAndLength) {
  const Route r = solve_route(kDepot, {}, 10);
  EXPECT_DOUBLE_EQ(route_length(r), 0.0);
  EXPECT_TRUE(r.edges().empty());
}

TEST(SolveRoute, EveryRoiOnceAndDeterministic) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1000);
  for (int t = 0; t < 20; ++t) {
    std::vector<RouteNode> n;
    for (int k = 0; k < 7; ++k) n.push_back({{u(rng), u(rng)}, NodeKind::kRoi, k + 1});
    const Route a = solve_route(kDepot, n, 1e9);
    const Route b = solve_route(kDepot, n, 1e9);
    ASSERT_EQ(a.nodes.size(), n.size() + 2);
    std::vector<int> ids;
    for (std::size_t i = 1; i + 1 < a.nodes.size(); ++i) {
      ids.push_back(a.nodes[i].id);
      EXPECT_EQ(a.nodes[i].id, b.nodes[i].id);
    }
    std::sort(ids.begin(), ids.end());
    for (int k = 0; k < 7; ++k) EXPECT_EQ(ids[k], k + 1);
    EXPECT_LE(a.nodes[1].id, a.nodes[a.nodes.size() - 2].id);
  }
}

TEST(SolveRoute, ExactMatchesPermutations) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1000);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 7;
    std::vector<RouteNode> nodes;
    for (int k = 0; k < n; ++k) nodes.push_back({{u(rng), u(rng)}, NodeKind::kRoi, k + 1});
    EXPECT_NEAR(solve_route(kDepot, nodes, 1e9).length(),
                brute_force(kDepot, nodes), 1e-9);
  }
}

TEST(SolveRoute, LargeInstanceUsesHeuristic) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1000);
  std::vector<RouteNode> n;
  for (int k = 0; k < 20; ++k) n.push_back({{u(rng), u(rng)}, NodeKind::kRoi, k + 1});
  const Route r = solve_route(kDepot, n, 1e9);
  EXPECT_EQ(r.nodes.size(), 22u);
  std::vector<Point> pts{kDepot.position};
  for (const auto& x : n) pts.push_back(x.position);
  const auto d = distance_matrix(pts);
  auto order = nearest_neighbor_order(d);
  const double seed = tour_length(d, order);
  two_opt(d, &order);
  EXPECT_LE(tour_length(d, order), seed + 1e-9);
  EXPECT_LE(r.length(), seed + 1e-9);
}

TEST(HeldKarp, OrderIsPermutation) {
  std::vector<Point> pts{{0, 0}, {5, 5}, {9, 1}, {2, 8}, {7, 7}};
  const auto order = held_karp_order(distance_matrix(pts));
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{1, 2, 3, 4}));
}

TEST(EdgeDensity, Formula) {
  const std::vector<Segment> e{{{0, 0}, {100, 0}}};
  EXPECT_DOUBLE_EQ(edge_density({50, 0}, e, 0.1, 1.0), 0.1);
  EXPECT_DOUBLE_EQ(edge_density({50, 100}, e, 0.1, 1.0), 100.1);
  EXPECT_DOUBLE_EQ(edge_density({500, 900}, e, 0.1, 0.0), 0.1);
  EXPECT_THROW(edge_density({0, 0}, {}, 0.1, 1.0), InvalidArgument);
}

TEST(Cvt, NoPseudoNodes) {
  CvtConfig cfg;
  cfg.n_pseudo = 0;
  Rng rng = make_rng({1});
  const std::vector<Segment> e{{{0, 0}, {100, 0}}};
  EXPECT_TRUE(cvt_pseudo_nodes({}, e, Domain{}, cfg, rng).empty());
}

TEST(Cvt, SingleGeneratorFindsCenter) {
  CvtConfig cfg;
  cfg.n_pseudo = 1;
  cfg.beta_rho = 0.0;
  cfg.samples_per_iter = 100000;
  Rng rng = make_rng({2});
  const std::vector<Segment> e{{{0, 0}, {100, 0}}};
  const auto p = cvt_pseudo_nodes({}, e, Domain{}, cfg, rng);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p[0].x(), 500, 20);
  EXPECT_NEAR(p[0].y(), 500, 20);
}

TEST(Cvt, RoiGeneratorsFixedAndNodesInside) {
  CvtConfig cfg;
  const std::vector<Point> roi{{200, 200}, {800, 300}, {500, 800}};
  const std::vector<Point> copy = roi;
  const std::vector<Segment> e{{{0, 0}, {200, 200}}, {{200, 200}, {800, 300}}};
  Rng rng = make_rng({3});
  const auto p = cvt_pseudo_nodes(roi, e, Domain{}, cfg, rng);
  EXPECT_EQ(roi, copy);
  ASSERT_EQ(p.size(), 3u);
  for (const auto& x : p) EXPECT_TRUE(Domain{}.contains(x));
}

TEST(Augment, NoPseudoKeepsRoute) {
  const auto n = rois({{100, 0}, {100, 100}, {0, 100}});
  const Route r = solve_route(kDepot, n, 1e4);
  const Route a = augment_route(r, {}, 1e4);
  ASSERT_EQ(a.nodes.size(), r.nodes.size());
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    EXPECT_EQ(a.nodes[i].id, r.nodes[i].id);
    EXPECT_EQ(a.nodes[i].position, r.nodes[i].position);
  }
}

TEST(Augment, SupersetIsOptimalAndLonger) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1000);
  for (int t = 0; t < 20; ++t) {
    const auto n = rois({{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}});
    const Route r = solve_route(kDepot, n, 1e9);
    const std::vector<Point> pseudo{{u(rng), u(rng)}};
    const Route a = augment_route(r, pseudo, 1e9);
    EXPECT_GE(a.length(), r.length() - 1e-9);
    EXPECT_EQ(a.count(NodeKind::kRoi), 3u);
    EXPECT_EQ(a.count(NodeKind::kPseudo), 1u);
    auto all = n;
    all.push_back({pseudo[0], NodeKind::kPseudo, 4});
    EXPECT_NEAR(a.length(), brute_force(kDepot, all), 1e-9);
  }
}

TEST(Augment, InfeasiblePropagates) {
  const auto n = rois({{100, 0}});
  const Route r = solve_route(kDepot, n, 200);
  const std::vector<Point> far{{900, 900}};
  EXPECT_THROW(augment_route(r, far, 200), BudgetInfeasible);
}

}  // namespace
}  // namespace hazardscout
