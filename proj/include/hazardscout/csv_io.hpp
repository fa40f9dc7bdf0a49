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

#include "hazardscout/belief.hpp"
#include "hazardscout/budget.hpp"
#include "hazardscout/executor.hpp"
#include "hazardscout/routing.hpp"
#include "hazardscout/scenario.hpp"
#include "hazardscout/spline.hpp"

namespace hazardscout {

/// Shortest round-trip decimal text for a double; "nan"/"inf"/"-inf" for
/// non-finite values.
std::string format_double(double v);

/// `x,y,value` per cell, row-major.
void write_grid_csv(const std::string& path, const Grid& grid,
                    std::span<const double> values);
/// `x,y,b,v` per cell.
void write_belief_csv(const std::string& path, const Grid& grid,
                      std::span<const double> prob,
                      std::span<const double> variance);
/// `cx,cy,sigma,w`
void write_reports_csv(const std::string& path,
                       std::span<const RoiReport> reports);
/// `cx,cy`
void write_points_csv(const std::string& path, std::span<const Point> pts);
/// `order,id,kind,x,y`
void write_route_csv(const std::string& path, const Route& route);
/// `edge,nominal,marginal,cap`
void write_budget_csv(const std::string& path,
                      std::span<const EdgeBudget> budgets);
/// `tau,x,y,v,u,chi` at `n` uniform times.
void write_path_csv(const std::string& path, const SplinePath& spline, int n);
/// `step,x,y,y_meas,triggered,accepted,edge`
void write_mission_log_csv(const std::string& path,
                           std::span<const LogRow> rows);
/// `x,y` executed trajectory vertices.
void write_trajectory_csv(const std::string& path,
                          std::span<const Point> pts);

/// 8-bit plain PGM (P2), row-major with the top image row at the largest y.
/// Values are mapped linearly from [lo, hi] to [0, 255].
void write_pgm(const std::string& path, const Grid& grid,
               std::span<const double> values, double lo = 0.0,
               double hi = 1.0);

/// Minimal CSV reader for files written by this library: header names plus
/// rows of raw string fields.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;
};
CsvTable read_csv(const std::string& path);

}  // namespace hazardscout
