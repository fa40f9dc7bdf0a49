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

#include <Eigen/Core>

namespace hazardscout {

using Point = Eigen::Vector2d;

/// Axis-aligned rectangular mission area in meters.
struct Domain {
  double x_min = 0.0;
  double x_max = 1000.0;
  double y_min = 0.0;
  double y_max = 1000.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool contains(const Point& p) const {
    return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min &&
           p.y() <= y_max;
  }
  Point clamp(const Point& p) const;
  /// Throws InvalidArgument unless x_min < x_max and y_min < y_max.
  void validate() const;
};

/// Uniform cell-centered grid over a Domain. Cell (i, j) has column i along
/// x and row j along y; the linear index is row-major, j * nx + i.
class Grid {
 public:
  Grid(const Domain& domain, int nx, int ny);

  const Domain& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_area() const { return dx_ * dy_; }
  std::size_t size() const { return centers_.size(); }
  const Point& center(std::size_t idx) const { return centers_[idx]; }
  const std::vector<Point>& centers() const { return centers_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  int column_of(std::size_t idx) const { return static_cast<int>(idx % nx_); }
  int row_of(std::size_t idx) const { return static_cast<int>(idx / nx_); }

  /// Indices of all cells whose center lies within `radius` (inclusive) of
  /// `x`, in ascending index order.
  std::vector<std::size_t> cells_within(const Point& x, double radius) const;

  /// Inclusive column/row window covering the disk of `radius` around `x`,
  /// clamped to the grid. Returns false when the window is empty.
  bool window(const Point& x, double radius, int* i0, int* i1, int* j0,
              int* j1) const;

  bool same_layout(const Grid& other) const;

 private:
  Domain domain_;
  int nx_;
  int ny_;
  double dx_;
  double dy_;
  std::vector<Point> centers_;
};

Grid make_grid(const Domain& domain, int nx, int ny);

/// Directed line segment from `a` to `b`.
struct Segment {
  Point a;
  Point b;

  double length() const { return (b - a).norm(); }
  bool degenerate() const { return a == b; }
};

/// Normalized position of the orthogonal projection of `x` onto the line
/// through the segment: 0 at `a`, 1 at `b`, unbounded outside.
double project_onto_segment(const Point& x, const Segment& s);

/// Euclidean distance from `x` to the closest point of the finite segment.
double point_segment_distance(const Point& x, const Segment& s);

/// Squared variant of point_segment_distance; avoids the sqrt in hot loops.
double point_segment_distance_sq(const Point& x, const Segment& s);

/// Assignment of grid cells to their closest route edge.
struct SegmentPartition {
  std::vector<int> assignment;  // cell index -> edge index
  std::vector<double> areas;    // per-edge area, m^2

  /// Cells assigned to edge `k`, ascending.
  std::vector<std::size_t> cells_of(int k) const;
};

/// Line-segment Voronoi partition by brute-force scan. Equal distances
/// resolve to the lowest edge index.
SegmentPartition segment_voronoi_partition(const Grid& grid,
                                           std::span<const Segment> edges);

}  // namespace hazardscout
