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

#include "hazardscout/spline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hazardscout/error.hpp"

namespace hazardscout {

std::vector<double> clamped_uniform_knots(int n_control, int order,
                                          double t_final) {
  const int interior = n_control - order;
  std::vector<double> knots;
  knots.reserve(n_control + order);
  for (int i = 0; i < order; ++i) knots.push_back(0.0);
  for (int i = 1; i <= interior; ++i) {
    knots.push_back(t_final * i / (interior + 1));
  }
  for (int i = 0; i < order; ++i) knots.push_back(t_final);
  return knots;
}

double endpoint_velocity_offset(int n_control, int order, double t_final) {
  const double spacing = t_final / (n_control - order + 1);
  return spacing / (order - 1);
}

SplinePath::SplinePath(std::vector<Point> control_points, int order,
                       double t_final)
    : control_(std::move(control_points)), order_(order), t_final_(t_final) {
  if (order_ < 2) throw InvalidArgument("spline order must be >= 2");
  if (static_cast<int>(control_.size()) < order_) {
    throw InvalidArgument("spline needs at least `order` control points");
  }
  if (!(t_final_ > 0)) throw InvalidArgument("spline t_f must be positive");
  knots_ = clamped_uniform_knots(static_cast<int>(control_.size()), order_,
                                 t_final_);
}

double SplinePath::knot_spacing() const {
  return t_final_ / (static_cast<double>(control_.size()) - order_ + 1);
}

int SplinePath::find_span(double tau) const {
  const int n = static_cast<int>(control_.size());
  const int p = degree();
  if (tau >= knots_[n]) return n - 1;
  if (tau <= knots_[p]) return p;
  // Last index s in [p, n-1] with knots[s] <= tau.
  auto it = std::upper_bound(knots_.begin() + p, knots_.begin() + n + 1, tau);
  return static_cast<int>(it - knots_.begin()) - 1;
}

void SplinePath::basis_derivatives(
    int span, double u, int n, std::vector<std::vector<double>>* out) const {
  const int p = degree();
  auto& ders = *out;
  ders.assign(n + 1, std::vector<double>(p + 1, 0.0));
  std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1));
  std::vector<double> left(p + 1), right(p + 1);
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - knots_[span + 1 - j];
    right[j] = knots_[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  const int nd = std::min(n, p);
  std::vector<std::vector<double>> a(2, std::vector<double>(p + 1));
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
}

Point SplinePath::eval(double tau, int derivative) const {
  if (!(tau >= 0.0 && tau <= t_final_)) {
    throw InvalidArgument("spline parameter outside [0, t_f]");
  }
  if (derivative < 0 || derivative > 2) {
    throw InvalidArgument("derivative order must be 0, 1 or 2");
  }
  if (derivative == 0) {
    if (tau == 0.0) return control_.front();
    if (tau == t_final_) return control_.back();
  }
  const int span = find_span(tau);
  std::vector<std::vector<double>> ders;
  basis_derivatives(span, tau, derivative, &ders);
  Point out = Point::Zero();
  const int p = degree();
  for (int j = 0; j <= p; ++j) {
    out += ders[derivative][j] * control_[span - p + j];
  }
  return out;
}

Eigen::MatrixXd SplinePath::basis_matrix(std::span<const double> times,
                                         int derivative) const {
  const int n = static_cast<int>(control_.size());
  const int p = degree();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(times.size(), n);
  std::vector<std::vector<double>> ders;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double tau = times[k];
    if (!(tau >= 0.0 && tau <= t_final_)) {
      throw InvalidArgument("spline parameter outside [0, t_f]");
    }
    const int span = find_span(tau);
    basis_derivatives(span, tau, derivative, &ders);
    for (int j = 0; j <= p; ++j) m(k, span - p + j) = ders[derivative][j];
  }
  return m;
}

Eigen::MatrixXd SplinePath::control_matrix() const {
  Eigen::MatrixXd m(control_.size(), 2);
  for (std::size_t i = 0; i < control_.size(); ++i) {
    m.row(i) = control_[i].transpose();
  }
  return m;
}

KinematicSample kinematics(const SplinePath& path, double tau) {
  KinematicSample k;
  k.tau = tau;
  k.position = path.eval(tau, 0);
  const Point vel = path.eval(tau, 1);
  const Point acc = path.eval(tau, 2);
  k.speed = vel.norm();
  if (k.speed < 1e-9) throw ZeroSpeed("spline speed vanishes");
  const double cross = vel.x() * acc.y() - vel.y() * acc.x();
  k.turn_rate = cross / (k.speed * k.speed);
  k.curvature = k.turn_rate / k.speed;
  return k;
}

namespace {

Quadrature compute_gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    q.nodes[i] = -z;
    q.nodes[n - 1 - i] = z;
    q.weights[i] = q.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return q;
}

}  // namespace

const Quadrature& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double arc_length(const SplinePath& path) {
  const Quadrature& q = gauss_legendre(32);
  const auto& knots = path.knots();
  double len = 0.0;
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const double lo = knots[s], hi = knots[s + 1];
    if (hi <= lo) continue;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      len += q.weights[k] * half * path.eval(mid + half * q.nodes[k], 1).norm();
    }
  }
  return len;
}

SplinePath straight_spline(const Point& a, const Point& b, double v_cruise,
                           int order, int n_control) {
  if (a == b) throw InvalidArgument("straight spline needs distinct endpoints");
  if (!(v_cruise > 0)) throw InvalidArgument("cruise speed must be positive");
  const double t_final = (b - a).norm() / v_cruise;
  const auto knots = clamped_uniform_knots(n_control, order, t_final);
  const int p = order - 1;
  std::vector<Point> control(n_control);
  for (int i = 0; i < n_control; ++i) {
    double greville = 0.0;
    for (int k = 1; k <= p; ++k) greville += knots[i + k];
    greville /= p;
    control[i] = a + (greville / t_final) * (b - a);
  }
  control.front() = a;
  control.back() = b;
  return SplinePath(std::move(control), order, t_final);
}

std::vector<double> uniform_times(double t_final, int n) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) {
    t[k] = n == 1 ? 0.0 : t_final * k / (n - 1);
  }
  t.back() = t_final;
  return t;
}

std::vector<Point> sample_positions(const SplinePath& path, int n) {
  std::vector<Point> out;
  out.reserve(n);
  for (double t : uniform_times(path.t_final(), n)) out.push_back(path.eval(t));
  return out;
}

}  // namespace hazardscout
