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

#include "hazardscout/budget.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hazardscout/error.hpp"

namespace hazardscout {

double nominal_length(const Segment& edge) { return edge.length(); }

double marginal_budget(double total_budget, std::span<const Segment> edges) {
  double nominal = 0.0;
  for (const auto& e : edges) nominal += nominal_length(e);
  const double marginal = total_budget - nominal;
  if (marginal < 0) {
    std::ostringstream os;
    os << "nominal route length " << nominal << " m exceeds budget "
       << total_budget << " m";
    throw BudgetExceeded(os.str());
  }
  return marginal;
}

namespace {

std::vector<double> shares(std::span<const double> weights, double marginal) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> out(weights.size(), 0.0);
  if (weights.empty()) return out;
  double assigned = 0.0;
  for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
    out[k] = marginal * weights[k] / total;
    assigned += out[k];
  }
  out.back() = std::max(0.0, marginal - assigned);
  return out;
}

}  // namespace

std::vector<EdgeBudget> allocate_budgets(
    std::span<const Segment> edges, const SegmentPartition& partition,
    std::optional<std::span<const double>> scores, double marginal) {
  if (partition.areas.size() != edges.size()) {
    throw InvalidArgument("partition does not match the edge list");
  }
  if (marginal < 0) throw InvalidArgument("marginal budget is negative");
  const double area_sum =
      std::accumulate(partition.areas.begin(), partition.areas.end(), 0.0);
  if (!(area_sum > 0)) throw InvalidArgument("partition areas sum to zero");

  std::vector<double> weights(partition.areas.begin(), partition.areas.end());
  if (scores) {
    if (scores->size() != edges.size()) {
      throw InvalidArgument("one score per edge is required");
    }
    std::vector<double> weighted(edges.size());
    double total = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if ((*scores)[k] < 0) throw InvalidArgument("scores must be >= 0");
      weighted[k] = partition.areas[k] * (*scores)[k];
      total += weighted[k];
    }
    if (total > 0) weights = std::move(weighted);
  }

  const auto b = shares(weights, marginal);
  std::vector<EdgeBudget> out(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out[k].edge = static_cast<int>(k);
    out[k].nominal = nominal_length(edges[k]);
    out[k].marginal = b[k];
  }
  return out;
}

std::vector<double> mean_belief_scores(const BeliefGrid& belief,
                                       const SegmentPartition& partition,
                                       std::size_t n_edges) {
  std::vector<double> sum(n_edges, 0.0);
  std::vector<std::size_t> count(n_edges, 0);
  for (std::size_t c = 0; c < partition.assignment.size(); ++c) {
    const int k = partition.assignment[c];
    sum[k] += belief.prob(c);
    ++count[k];
  }
  for (std::size_t k = 0; k < n_edges; ++k) {
    sum[k] = count[k] ? sum[k] / count[k] : 0.0;
  }
  return sum;
}

}  // namespace hazardscout
