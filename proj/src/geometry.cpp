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

#include "hazardscout/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hazardscout/error.hpp"

namespace hazardscout {

Point Domain::clamp(const Point& p) const {
  return {std::clamp(p.x(), x_min, x_max), std::clamp(p.y(), y_min, y_max)};
}

void Domain::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) {
    std::ostringstream os;
    os << "invalid domain [" << x_min << ", " << x_max << "] x [" << y_min
       << ", " << y_max << "]";
    throw InvalidArgument(os.str());
  }
}

Grid::Grid(const Domain& domain, int nx, int ny)
    : domain_(domain), nx_(nx), ny_(ny) {
  domain_.validate();
  if (nx < 1 || ny < 1) {
    throw InvalidArgument("grid cell counts must be positive");
  }
  dx_ = domain_.width() / nx_;
  dy_ = domain_.height() / ny_;
  centers_.reserve(static_cast<std::size_t>(nx_) * ny_);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      centers_.emplace_back(domain_.x_min + (i + 0.5) * dx_,
                            domain_.y_min + (j + 0.5) * dy_);
    }
  }
}

bool Grid::window(const Point& x, double radius, int* i0, int* i1, int* j0,
                  int* j1) const {
  // Center of column i sits at x_min + (i + 0.5) dx.
  *i0 = std::max(0, static_cast<int>(std::ceil(
                        (x.x() - radius - domain_.x_min) / dx_ - 0.5)));
  *i1 = std::min(nx_ - 1, static_cast<int>(std::floor(
                              (x.x() + radius - domain_.x_min) / dx_ - 0.5)));
  *j0 = std::max(0, static_cast<int>(std::ceil(
                        (x.y() - radius - domain_.y_min) / dy_ - 0.5)));
  *j1 = std::min(ny_ - 1, static_cast<int>(std::floor(
                              (x.y() + radius - domain_.y_min) / dy_ - 0.5)));
  return *i0 <= *i1 && *j0 <= *j1;
}

std::vector<std::size_t> Grid::cells_within(const Point& x,
                                            double radius) const {
  std::vector<std::size_t> out;
  int i0, i1, j0, j1;
  if (!window(x, radius, &i0, &i1, &j0, &j1)) return out;
  const double r2 = radius * radius;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const std::size_t idx = index(i, j);
      if ((centers_[idx] - x).squaredNorm() <= r2) out.push_back(idx);
    }
  }
  return out;
}

bool Grid::same_layout(const Grid& other) const {
  return nx_ == other.nx_ && ny_ == other.ny_ &&
         domain_.x_min == other.domain_.x_min &&
         domain_.x_max == other.domain_.x_max &&
         domain_.y_min == other.domain_.y_min &&
         domain_.y_max == other.domain_.y_max;
}

Grid make_grid(const Domain& domain, int nx, int ny) {
  return Grid(domain, nx, ny);
}

double project_onto_segment(const Point& x, const Segment& s) {
  const Point ab = s.b - s.a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) throw DegenerateSegment("segment endpoints coincide");
  return (x - s.a).dot(ab) / len2;
}

double point_segment_distance_sq(const Point& x, const Segment& s) {
  const double eta = project_onto_segment(x, s);
  if (eta < 0.0) return (x - s.a).squaredNorm();
  if (eta > 1.0) return (x - s.b).squaredNorm();
  return (x - (s.a + eta * (s.b - s.a))).squaredNorm();
}

double point_segment_distance(const Point& x, const Segment& s) {
  return std::sqrt(point_segment_distance_sq(x, s));
}

std::vector<std::size_t> SegmentPartition::cells_of(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == k) out.push_back(i);
  }
  return out;
}

SegmentPartition segment_voronoi_partition(const Grid& grid,
                                           std::span<const Segment> edges) {
  if (edges.empty()) throw EmptyPartition("no edges to partition over");
  SegmentPartition part;
  part.assignment.assign(grid.size(), 0);
  part.areas.assign(edges.size(), 0.0);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const Point& g = grid.center(c);
    double best = std::numeric_limits<double>::infinity();
    int best_k = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const double d = point_segment_distance_sq(g, edges[k]);
      if (d < best) {
        best = d;
        best_k = static_cast<int>(k);
      }
    }
    part.assignment[c] = best_k;
  }
  std::vector<std::size_t> counts(edges.size(), 0);
  for (int k : part.assignment) ++counts[k];
  for (std::size_t k = 0; k < edges.size(); ++k) {
    part.areas[k] = static_cast<double>(counts[k]) * grid.cell_area();
  }
  return part;
}

}  // namespace hazardscout
