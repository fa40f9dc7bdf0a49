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

#include <optional>
#include <span>
#include <vector>

#include "hazardscout/belief.hpp"
#include "hazardscout/geometry.hpp"

namespace hazardscout {

struct EdgeBudget {
  int edge = 0;
  double nominal = 0.0;   // Euclidean endpoint distance
  double marginal = 0.0;  // share of the exploration budget
  double cap() const { return nominal + marginal; }
};

double nominal_length(const Segment& edge);

/// D_m minus the summed nominal lengths. Throws BudgetExceeded when
/// negative.
double marginal_budget(double total_budget, std::span<const Segment> edges);

/// Splits `marginal` across edges in proportion to partition area, or to
/// area times score when scores are given. All-zero weights fall back to
/// area-only. The last edge absorbs rounding so the shares sum exactly to
/// `marginal`.
std::vector<EdgeBudget> allocate_budgets(
    std::span<const Segment> edges, const SegmentPartition& partition,
    std::optional<std::span<const double>> scores, double marginal);

/// Mean belief over each edge's partition cell set (0 for empty sets).
std::vector<double> mean_belief_scores(const BeliefGrid& belief,
                                       const SegmentPartition& partition,
                                       std::size_t n_edges);

}  // namespace hazardscout
