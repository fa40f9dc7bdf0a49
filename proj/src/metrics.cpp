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

#include "hazardscout/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "hazardscout/error.hpp"

namespace hazardscout {

double bernoulli_kl(std::span<const double> p, std::span<const double> b,
                    double eps) {
  if (p.size() != b.size()) throw GridMismatch("KL fields differ in size");
  if (!(eps > 0 && eps < 0.5)) throw InvalidArgument("eps must be in (0, 0.5)");
  if (p.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = std::clamp(p[i], eps, 1.0 - eps);
    const double bi = std::clamp(b[i], eps, 1.0 - eps);
    sum += pi * std::log(pi / bi) + (1.0 - pi) * std::log((1.0 - pi) / (1.0 - bi));
  }
  return sum / static_cast<double>(p.size());
}

double kl_reduction(std::span<const double> truth, std::span<const double> b0,
                    std::span<const double> bT, double eps) {
  return bernoulli_kl(truth, b0, eps) - bernoulli_kl(truth, bT, eps);
}

namespace {

// Liang-Barsky test of a segment against a closed rectangle.
bool meets_box(const Segment& s, double x0, double x1, double y0, double y1) {
  const Point d = s.b - s.a;
  const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
  const double q[4] = {s.a.x() - x0, x1 - s.a.x(), s.a.y() - y0, y1 - s.a.y()};
  double t0 = 0.0, t1 = 1.0;
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

std::vector<std::size_t> supercover_cells(const Segment& s, const Grid& grid) {
  const Domain& d = grid.domain();
  const double dx = grid.dx(), dy = grid.dy();
  // Column strips give candidates with a little slack; the exact box test
  // settles cells that only touch at an edge or corner.
  const double ex = 1e-7 * dx, ey = 1e-7 * dy;
  const double x_lo = std::min(s.a.x(), s.b.x()) - ex;
  const double x_hi = std::max(s.a.x(), s.b.x()) + ex;
  std::vector<std::size_t> out;
  if (x_hi < d.x_min || x_lo > d.x_max) return out;
  auto clamp_index = [](double v, int n) {
    return std::clamp(static_cast<int>(std::floor(v)), 0, n - 1);
  };
  const int i0 = clamp_index((x_lo - d.x_min) / dx, grid.nx());
  const int i1 = clamp_index((x_hi - d.x_min) / dx, grid.nx());
  const double sx = s.b.x() - s.a.x();
  for (int i = i0; i <= i1; ++i) {
    const double bx0 = d.x_min + i * dx, bx1 = bx0 + dx;
    double ya, yb;
    if (sx == 0.0) {
      ya = s.a.y();
      yb = s.b.y();
    } else {
      const double ca = std::clamp((bx0 - s.a.x()) / sx, 0.0, 1.0);
      const double cb = std::clamp((bx1 - s.a.x()) / sx, 0.0, 1.0);
      ya = s.a.y() + ca * (s.b.y() - s.a.y());
      yb = s.a.y() + cb * (s.b.y() - s.a.y());
    }
    const int j0 = clamp_index((std::min(ya, yb) - ey - d.y_min) / dy, grid.ny());
    const int j1 = clamp_index((std::max(ya, yb) + ey - d.y_min) / dy, grid.ny());
    for (int j = j0; j <= j1; ++j) {
      const double by0 = d.y_min + j * dy;
      if (meets_box(s, bx0, bx1, by0, by0 + dy)) out.push_back(grid.index(i, j));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<int> edge_counts(std::span<const Segment> edges, const Grid& grid) {
  if (edges.empty()) throw InvalidArgument("coverage metrics need edges");
  std::vector<int> count(grid.size(), 0);
  for (const Segment& e : edges) {
    for (std::size_t c : supercover_cells(e, grid)) ++count[c];
  }
  return count;
}

}  // namespace

double ecr(std::span<const Segment> edges, const Grid& grid) {
  const auto count = edge_counts(edges, grid);
  const auto covered = std::count_if(count.begin(), count.end(),
                                     [](int c) { return c > 0; });
  return static_cast<double>(covered) / static_cast<double>(grid.size());
}

double edv(std::span<const Segment> edges, const Grid& grid) {
  const auto count = edge_counts(edges, grid);
  const double n = static_cast<double>(count.size());
  double mean = 0.0;
  for (int c : count) mean += c;
  mean /= n;
  double var = 0.0;
  for (int c : count) var += (c - mean) * (c - mean);
  return var / n;
}

}  // namespace hazardscout
