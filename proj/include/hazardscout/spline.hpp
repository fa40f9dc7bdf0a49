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
#include <vector>

#include <Eigen/Core>

#include "hazardscout/geometry.hpp"

namespace hazardscout {

/// Planar clamped B-spline p(tau) = sum_i B_{i,r}(tau) c_i on [0, t_f] with a
/// uniform interior knot vector. `order` is r (degree r - 1).
class SplinePath {
 public:
  SplinePath(std::vector<Point> control_points, int order, double t_final);

  int order() const { return order_; }
  int degree() const { return order_ - 1; }
  double t_final() const { return t_final_; }
  const std::vector<Point>& control_points() const { return control_; }
  const std::vector<double>& knots() const { return knots_; }
  std::size_t num_control_points() const { return control_.size(); }
  /// Length of one interior knot span.
  double knot_spacing() const;

  /// Position (0), velocity (1) or acceleration (2) at tau. Throws
  /// InvalidArgument outside [0, t_f].
  Point eval(double tau, int derivative = 0) const;

  /// Row k holds the basis values (or their derivatives) at times[k]; the
  /// path samples are then basis * control_matrix.
  Eigen::MatrixXd basis_matrix(std::span<const double> times,
                               int derivative) const;

  /// Control points as an N_c x 2 matrix.
  Eigen::MatrixXd control_matrix() const;

 private:
  int find_span(double tau) const;
  // Basis derivatives 0..n at tau for the active span; ders[k][j] is the
  // k-th derivative of basis (span - p + j).
  void basis_derivatives(int span, double tau, int n,
                         std::vector<std::vector<double>>* ders) const;

  std::vector<Point> control_;
  int order_;
  double t_final_;
  std::vector<double> knots_;
};

/// Clamped uniform knot vector with `n_control + order` entries on [0, t_f].
std::vector<double> clamped_uniform_knots(int n_control, int order,
                                          double t_final);

/// Scale s such that c_2 = c_1 + s * v_entry yields p'(0) = v_entry (and
/// symmetrically at the exit) for a clamped uniform spline.
double endpoint_velocity_offset(int n_control, int order, double t_final);

struct KinematicSample {
  double tau = 0.0;
  Point position = Point::Zero();
  double speed = 0.0;      // v, m/s
  double turn_rate = 0.0;  // u, rad/s
  double curvature = 0.0;  // chi, 1/m
};

/// Unicycle quantities from the first two derivatives. Throws ZeroSpeed
/// when the speed is below 1e-9.
KinematicSample kinematics(const SplinePath& path, double tau);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Quadrature& gauss_legendre(int n);

/// Arc length by 32-point Gauss-Legendre quadrature on every knot span.
double arc_length(const SplinePath& path);

/// Constant-speed straight spline from a to b. Control points sit at the
/// Greville abscissae so the parameterization is exactly linear.
SplinePath straight_spline(const Point& a, const Point& b, double v_cruise,
                           int order = 4, int n_control = 8);

/// Positions at `n` equally spaced parameter values including both ends.
std::vector<Point> sample_positions(const SplinePath& path, int n);

/// Times of `n` equally spaced samples on [0, t_f].
std::vector<double> uniform_times(double t_final, int n);

}  // namespace hazardscout
