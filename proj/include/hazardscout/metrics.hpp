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

#include <cstddef>
#include <span>
#include <vector>

#include "hazardscout/geometry.hpp"

namespace hazardscout {

/// Mean cell-wise Bernoulli KL divergence KL(p || b) with both fields
/// clipped to [eps, 1 - eps]. Throws GridMismatch on size mismatch.
double bernoulli_kl(std::span<const double> p, std::span<const double> b,
                    double eps);

/// KL(truth || b0) - KL(truth || bT).
double kl_reduction(std::span<const double> truth, std::span<const double> b0,
                    std::span<const double> bT, double eps);

/// Cells whose closed rectangle meets the segment, ascending.
std::vector<std::size_t> supercover_cells(const Segment& s, const Grid& grid);

/// Fraction of grid cells crossed by at least one edge.
double ecr(std::span<const Segment> edges, const Grid& grid);

/// Population variance of the per-cell edge count.
double edv(std::span<const Segment> edges, const Grid& grid);

struct MetricReport {
  double kl_initial = 0.0;
  double kl_final = 0.0;
  double dkl = 0.0;
  double ecr = 0.0;
  double edv = 0.0;
};

}  // namespace hazardscout
