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

#include "hazardscout/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hazardscout/error.hpp"

namespace hazardscout {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  return out;
}

void check_grid(const Grid& grid, std::size_t n) {
  if (n != grid.size()) throw GridMismatch("field does not match the grid");
}

}  // namespace

void write_grid_csv(const std::string& path, const Grid& grid,
                    std::span<const double> values) {
  check_grid(grid, values.size());
  auto out = open_out(path);
  out << "x,y,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_double(grid.center(i).x()) << ','
        << format_double(grid.center(i).y()) << ',' << format_double(values[i])
        << '\n';
  }
}

void write_belief_csv(const std::string& path, const Grid& grid,
                      std::span<const double> prob,
                      std::span<const double> variance) {
  check_grid(grid, prob.size());
  check_grid(grid, variance.size());
  auto out = open_out(path);
  out << "x,y,b,v\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_double(grid.center(i).x()) << ','
        << format_double(grid.center(i).y()) << ',' << format_double(prob[i])
        << ',' << format_double(variance[i]) << '\n';
  }
}

void write_reports_csv(const std::string& path,
                       std::span<const RoiReport> reports) {
  auto out = open_out(path);
  out << "cx,cy,sigma,w\n";
  for (const auto& r : reports) {
    out << format_double(r.center.x()) << ',' << format_double(r.center.y())
        << ',' << format_double(r.sigma) << ',' << format_double(r.strength)
        << '\n';
  }
}

void write_points_csv(const std::string& path, std::span<const Point> pts) {
  auto out = open_out(path);
  out << "cx,cy\n";
  for (const auto& p : pts) {
    out << format_double(p.x()) << ',' << format_double(p.y()) << '\n';
  }
}

void write_route_csv(const std::string& path, const Route& route) {
  auto out = open_out(path);
  out << "order,id,kind,x,y\n";
  for (std::size_t i = 0; i < route.nodes.size(); ++i) {
    const auto& n = route.nodes[i];
    out << i << ',' << n.id << ',' << to_string(n.kind) << ','
        << format_double(n.position.x()) << ','
        << format_double(n.position.y()) << '\n';
  }
}

void write_budget_csv(const std::string& path,
                      std::span<const EdgeBudget> budgets) {
  auto out = open_out(path);
  out << "edge,nominal,marginal,cap\n";
  for (const auto& b : budgets) {
    out << b.edge << ',' << format_double(b.nominal) << ','
        << format_double(b.marginal) << ',' << format_double(b.cap()) << '\n';
  }
}

void write_path_csv(const std::string& path, const SplinePath& spline, int n) {
  auto out = open_out(path);
  out << "tau,x,y,v,u,chi\n";
  for (double t : uniform_times(spline.t_final(), n)) {
    const Point p = spline.eval(t);
    double v = spline.eval(t, 1).norm(), u = 0.0, chi = 0.0;
    if (v >= 1e-9) {
      const auto k = kinematics(spline, t);
      u = k.turn_rate;
      chi = k.curvature;
    }
    out << format_double(t) << ',' << format_double(p.x()) << ','
        << format_double(p.y()) << ',' << format_double(v) << ','
        << format_double(u) << ',' << format_double(chi) << '\n';
  }
}

void write_mission_log_csv(const std::string& path,
                           std::span<const LogRow> rows) {
  auto out = open_out(path);
  out << "step,x,y,y_meas,triggered,accepted,edge\n";
  for (const auto& r : rows) {
    out << r.step << ',' << format_double(r.position.x()) << ','
        << format_double(r.position.y()) << ',' << format_double(r.y) << ','
        << (r.triggered ? 1 : 0) << ',' << (r.accepted ? 1 : 0) << ','
        << r.edge << '\n';
  }
}

void write_trajectory_csv(const std::string& path,
                          std::span<const Point> pts) {
  auto out = open_out(path);
  out << "x,y\n";
  for (const auto& p : pts) {
    out << format_double(p.x()) << ',' << format_double(p.y()) << '\n';
  }
}

void write_pgm(const std::string& path, const Grid& grid,
               std::span<const double> values, double lo, double hi) {
  check_grid(grid, values.size());
  if (!(hi > lo)) throw InvalidArgument("PGM range needs hi > lo");
  auto out = open_out(path);
  out << "P2\n" << grid.nx() << ' ' << grid.ny() << "\n255\n";
  for (int j = grid.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const double f = std::clamp((values[grid.index(i, j)] - lo) / (hi - lo),
                                  0.0, 1.0);
      const int level = static_cast<int>(std::lround(f * 255.0));
      out << level << (i + 1 < grid.nx() ? ' ' : '\n');
    }
  }
}

int CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidArgument("CSV has no column '" + name + "'");
  return static_cast<int>(it - header.begin());
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV '" + path + "'");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(split(line));
  }
  return t;
}

}  // namespace hazardscout
