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

#include "hazardscout/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hazardscout/config.hpp"
#include "hazardscout/error.hpp"

namespace hazardscout {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// Upper tail 1 - Phi(z), accurate for large z.
double normal_upper(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double threshold_score(double d_sq, const SensorModel& s) {
  return (s.y_th - s.mu0 - s.kappa * sensing_kernel(d_sq, s.beta_s)) /
         s.sigma_y;
}

double cross2(const Point& a, const Point& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

VehicleLimits VehicleLimits::from_config(const MissionConfig& cfg) {
  VehicleLimits l;
  l.v_min = cfg.v_min;
  l.v_max = cfg.v_max;
  l.u_min = cfg.u_min;
  l.u_max = cfg.u_max;
  l.chi_max = cfg.chi_max;
  return l;
}

void VehicleLimits::validate() const {
  if (!(v_min > 0 && v_min < v_max)) {
    throw InvalidArgument("vehicle limits need 0 < v_min < v_max");
  }
  if (!(u_min < 0 && u_max > 0)) {
    throw InvalidArgument("vehicle limits need u_min < 0 < u_max");
  }
  if (!(chi_max > 0)) throw InvalidArgument("chi_max must be positive");
}

double detection_probability_sq(double d_sq, const SensorModel& sensor) {
  if (!(sensor.sigma_y > 0)) {
    throw InvalidArgument("detection probability needs sigma_y > 0");
  }
  return normal_upper(threshold_score(d_sq, sensor));
}

double detection_probability(double d, const SensorModel& sensor) {
  return detection_probability_sq(d * d, sensor);
}

double path_detection_score(std::span<const Point> samples, const Point& cell,
                            const SensorModel& sensor) {
  if (samples.empty()) throw InvalidArgument("path score needs a sample");
  double log_miss = 0.0;
  for (const Point& s : samples) {
    const double z = threshold_score((s - cell).squaredNorm(), sensor);
    // log(1 - pi) = log Phi(z), computed without cancellation.
    log_miss += std::log(normal_upper(-z));
  }
  return -std::expm1(log_miss);
}

DetectionObjective::DetectionObjective(const BeliefGrid& belief,
                                       std::span<const std::size_t> cells,
                                       const SensorModel& sensor)
    : belief_(belief),
      cells_(cells.begin(), cells.end()),
      local_(belief.size(), -1),
      sensor_(sensor) {
  if (!(sensor_.sigma_y > 0)) {
    throw InvalidArgument("detection objective needs sigma_y > 0");
  }
  if (!(sensor_.beta_s > 0)) throw InvalidArgument("beta_s must be positive");
  for (std::size_t n = 0; n < cells_.size(); ++n) {
    if (cells_[n] >= belief.size()) {
      throw InvalidArgument("edge cell index outside the grid");
    }
    local_[cells_[n]] = static_cast<int>(n);
  }
  const double z0 = (sensor_.y_th - sensor_.mu0) / sensor_.sigma_y;
  pi_far_ = normal_upper(z0);
  log_miss_far_ = std::log(normal_upper(-z0));
  // Kernel level below which the detection probability differs from the
  // far field by less than ~1e-9.
  double k_in = 1.0;
  if (sensor_.kappa != 0.0) {
    k_in = 1e-9 * sensor_.sigma_y /
           (std::abs(sensor_.kappa) * std::max(normal_pdf(z0), 1e-300));
    k_in = std::clamp(k_in, 1e-12, 1.0);
  }
  inner_sq_ = -std::log(k_in) / sensor_.beta_s;
  outer_sq_ = inner_sq_ + std::log(10.0) / sensor_.beta_s;
}

double DetectionObjective::value(std::span<const Point> samples) const {
  return evaluate(samples, nullptr);
}

double DetectionObjective::value_and_gradient(std::span<const Point> samples,
                                              std::vector<Point>* grad) const {
  return evaluate(samples, grad);
}

double DetectionObjective::evaluate(std::span<const Point> samples,
                                    std::vector<Point>* grad) const {
  struct Pair {
    int sample;
    int cell;
    double log_miss;
    Point dpi;  // d(pi_eff)/d(sample)
  };
  const Grid& grid = belief_.grid();
  const double n_samples = static_cast<double>(samples.size());
  std::vector<double> log_q(cells_.size(), n_samples * log_miss_far_);
  std::vector<Pair> pairs;
  const double outer = std::sqrt(outer_sq_);
  const double span_sq = outer_sq_ - inner_sq_;

  for (std::size_t j = 0; j < samples.size(); ++j) {
    const Point& s = samples[j];
    int i0, i1, j0, j1;
    if (!grid.window(s, outer, &i0, &i1, &j0, &j1)) continue;
    for (int r = j0; r <= j1; ++r) {
      for (int c = i0; c <= i1; ++c) {
        const std::size_t idx = grid.index(c, r);
        const int loc = local_[idx];
        if (loc < 0) continue;
        const Point diff = s - grid.center(idx);
        const double d_sq = diff.squaredNorm();
        if (d_sq >= outer_sq_) continue;
        const double k = sensing_kernel(d_sq, sensor_.beta_s);
        const double z =
            (sensor_.y_th - sensor_.mu0 - sensor_.kappa * k) / sensor_.sigma_y;
        // d(pi)/d(s) = -phi(z) dz/ds with dz/ds = 2 kappa beta K (s - g) / sigma.
        const double dpi_scale = -normal_pdf(z) * 2.0 * sensor_.kappa *
                                 sensor_.beta_s * k / sensor_.sigma_y;
        double log_miss;
        Point dpi;
        if (d_sq <= inner_sq_) {
          log_miss = std::log(normal_upper(-z));
          dpi = dpi_scale * diff;
        } else {
          const double t = (d_sq - inner_sq_) / span_sq;
          const double w = 1.0 - t * t * (3.0 - 2.0 * t);
          const double dw_dsq = -6.0 * t * (1.0 - t) / span_sq;
          const double pi = normal_upper(z);
          const double pi_eff = pi_far_ + (pi - pi_far_) * w;
          log_miss = std::log1p(-pi_eff);
          dpi = (w * dpi_scale + (pi - pi_far_) * dw_dsq * 2.0) * diff;
        }
        log_q[loc] += log_miss - log_miss_far_;
        if (grad) {
          pairs.push_back({static_cast<int>(j), loc, log_miss, dpi});
        }
      }
    }
  }

  double psi = 0.0;
  for (std::size_t n = 0; n < cells_.size(); ++n) {
    psi += belief_.prob(cells_[n]) * -std::expm1(log_q[n]);
  }
  if (grad) {
    grad->assign(samples.size(), Point::Zero());
    for (const Pair& p : pairs) {
      // b_i Q_i / (1 - pi_ij) d(pi_ij)/ds_j
      const double f = belief_.prob(cells_[p.cell]) *
                       std::exp(log_q[p.cell] - p.log_miss);
      (*grad)[p.sample] += f * p.dpi;
    }
  }
  return psi;
}

double expected_detection_objective(std::span<const Point> samples,
                                    const BeliefGrid& belief,
                                    std::span<const std::size_t> cells,
                                    const SensorModel& sensor) {
  return DetectionObjective(belief, cells, sensor).value(samples);
}

double eig_score(std::span<const Point> samples, const BeliefGrid& belief,
                 std::span<const std::size_t> cells,
                 const SensorModel& sensor) {
  if (!(sensor.sigma_y > 0)) throw InvalidArgument("eig needs sigma_y > 0");
  const Grid& grid = belief.grid();
  std::vector<int> local(belief.size(), -1);
  for (std::size_t n = 0; n < cells.size(); ++n) {
    local[cells[n]] = static_cast<int>(n);
  }
  std::vector<double> info(cells.size(), 0.0);
  const double inv_var = 1.0 / (sensor.sigma_y * sensor.sigma_y);
  std::vector<double> w;
  for (const Point& s : samples) {
    const auto hood = grid.cells_within(s, sensor.r_upd);
    if (hood.empty()) continue;
    w.resize(hood.size());
    double wsum = 0.0;
    for (std::size_t n = 0; n < hood.size(); ++n) {
      w[n] = sensing_kernel((grid.center(hood[n]) - s).squaredNorm(),
                            sensor.beta_s);
      wsum += w[n];
    }
    for (std::size_t n = 0; n < hood.size(); ++n) {
      const int loc = local[hood[n]];
      if (loc < 0) continue;
      const double b = belief.prob(hood[n]);
      const double h = sensor.kappa * w[n] * b * (1.0 - b) / wsum;
      info[loc] += h * h * inv_var;
    }
  }
  double score = 0.0;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    score += belief.prob(cells[n]) * 0.5 *
             std::log1p(belief.variance(cells[n]) * info[n]);
  }
  return score;
}

OptimizerConfig OptimizerConfig::from_config(const MissionConfig& cfg) {
  OptimizerConfig o;
  o.restarts = cfg.opt_restarts;
  o.max_iterations = cfg.opt_max_iterations;
  o.constraint_tol = cfg.opt_constraint_tol;
  o.order = cfg.spline_order;
  o.control_points = cfg.spline_control_points;
  o.samples = cfg.spline_samples;
  o.v_cruise = cfg.v_cruise;
  o.domain = cfg.domain;
  o.sensor = SensorModel::from_config(cfg);
  return o;
}

FeasibilityReport check_feasibility(const SplinePath& path,
                                    const VehicleLimits& limits, double cap,
                                    const Domain& domain, int n_checks,
                                    double tol) {
  FeasibilityReport rep;
  rep.min_speed = std::numeric_limits<double>::infinity();
  auto fail = [&rep](const char* why) {
    if (rep.feasible) rep.reason = why;
    rep.feasible = false;
  };
  for (double tau : uniform_times(path.t_final(), std::max(2, n_checks))) {
    KinematicSample k;
    try {
      k = kinematics(path, tau);
    } catch (const ZeroSpeed&) {
      rep.min_speed = 0.0;
      fail("speed vanishes");
      continue;
    }
    rep.min_speed = std::min(rep.min_speed, k.speed);
    rep.max_speed = std::max(rep.max_speed, k.speed);
    rep.max_abs_turn_rate = std::max(rep.max_abs_turn_rate, std::abs(k.turn_rate));
    rep.max_abs_curvature = std::max(rep.max_abs_curvature, std::abs(k.curvature));
    if (k.speed < limits.v_min * (1.0 - tol)) fail("speed below v_min");
    if (k.speed > limits.v_max * (1.0 + tol)) fail("speed above v_max");
    if (k.turn_rate < limits.u_min * (1.0 + tol)) fail("turn rate below u_min");
    if (k.turn_rate > limits.u_max * (1.0 + tol)) fail("turn rate above u_max");
    if (std::abs(k.curvature) > limits.chi_max * (1.0 + tol)) {
      fail("curvature above chi_max");
    }
    const double slack = 1e-6;
    if (k.position.x() < domain.x_min - slack ||
        k.position.x() > domain.x_max + slack ||
        k.position.y() < domain.y_min - slack ||
        k.position.y() > domain.y_max + slack) {
      fail("path leaves the domain");
    }
  }
  rep.length = arc_length(path);
  if (rep.length > cap * (1.0 + 1e-9)) fail("arc length above cap");
  return rep;
}

namespace {

// Fixed-duration spline family with pinned endpoint positions and
// velocities; the interior control points are free.
class PathProblem {
 public:
  PathProblem(const EdgeTask& task, const VehicleLimits& limits,
              const OptimizerConfig& cfg)
      : task_(task),
        cfg_(cfg),
        objective_(*task.belief, task.cells, cfg.sensor),
        smooth_(*task.belief, task.cells, widened(cfg.sensor, cfg.smoothing)),
        n_(cfg.control_points),
        order_(cfg.order) {
    t_final_ = task.cap / cfg.v_cruise;
    const double off = endpoint_velocity_offset(n_, order_, t_final_);
    fixed_first_ = {task.start, task.start + off * task.entry_velocity};
    fixed_last_ = {task.goal - off * task.exit_velocity, task.goal};

    const double m = cfg.kinematic_margin;
    v_lo_ = limits.v_min * (1.0 + m);
    v_hi_ = limits.v_max * (1.0 - m);
    u_lo_ = limits.u_min * (1.0 - m);
    u_hi_ = limits.u_max * (1.0 - m);
    chi_hi_ = limits.chi_max * (1.0 - m);
    cap_hi_ = task.cap * (1.0 - cfg.length_margin);

    SplinePath probe(straight_line(), order_, t_final_);
    const auto ts = uniform_times(t_final_, cfg.samples);
    basis_ = probe.basis_matrix(ts, 0);
    const auto tc = uniform_times(t_final_, 4 * cfg.samples);
    d1_ = probe.basis_matrix(tc, 1);
    d2_ = probe.basis_matrix(tc, 2);

    const Quadrature& q = gauss_legendre(32);
    const auto& knots = probe.knots();
    std::vector<double> tq;
    for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
      const double lo = knots[s], hi = knots[s + 1];
      if (hi <= lo) continue;
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        tq.push_back(mid + half * q.nodes[k]);
        wq_.push_back(half * q.weights[k]);
      }
    }
    dq_ = probe.basis_matrix(tq, 1);
  }

  int n() const { return n_; }
  double t_final() const { return t_final_; }
  int n_free() const { return n_ - 4; }

  std::vector<Point> straight_line() const {
    std::vector<Point> c(n_);
    c[0] = fixed_first_[0];
    c[1] = fixed_first_[1];
    c[n_ - 2] = fixed_last_[0];
    c[n_ - 1] = fixed_last_[1];
    for (int i = 2; i < n_ - 2; ++i) {
      const double f = static_cast<double>(i - 1) / (n_ - 3);
      c[i] = c[1] + f * (c[n_ - 2] - c[1]);
    }
    return c;
  }

  SplinePath to_path(const Eigen::MatrixXd& c) const {
    std::vector<Point> pts(n_);
    for (int i = 0; i < n_; ++i) pts[i] = c.row(i).transpose();
    return SplinePath(std::move(pts), order_, t_final_);
  }

  double psi(const Eigen::MatrixXd& c) const {
    return objective_.value(samples_of(c));
  }

  // Penalized objective; gradient rows for all control points when `grad`.
  double evaluate(const Eigen::MatrixXd& c, double mu, Eigen::MatrixXd* grad,
                  bool smooth = false) const {
    const auto samples = samples_of(c);
    std::vector<Point> gs;
    const DetectionObjective& obj = smooth ? smooth_ : objective_;
    const double psi = obj.value_and_gradient(samples, grad ? &gs : nullptr);

    Eigen::MatrixXd g_pos, g_vel, g_acc, g_len;
    if (grad) {
      g_pos = Eigen::MatrixXd::Zero(basis_.rows(), 2);
      for (std::size_t j = 0; j < gs.size(); ++j) g_pos.row(j) = gs[j].transpose();
      g_vel = Eigen::MatrixXd::Zero(d1_.rows(), 2);
      g_acc = Eigen::MatrixXd::Zero(d2_.rows(), 2);
      g_len = Eigen::MatrixXd::Zero(dq_.rows(), 2);
    }
    double pen = 0.0;

    // Domain containment on the objective samples, in units of 10 m.
    const Domain& dom = cfg_.domain;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      for (int a = 0; a < 2; ++a) {
        const double lo = a == 0 ? dom.x_min : dom.y_min;
        const double hi = a == 0 ? dom.x_max : dom.y_max;
        const double x = samples[j][a];
        double r = 0.0;
        if (x < lo) r = (x - lo) / 10.0;
        if (x > hi) r = (x - hi) / 10.0;
        if (r == 0.0) continue;
        pen += r * r;
        if (grad) g_pos(j, a) -= mu * 2.0 * r / 10.0;
      }
    }

    const Eigen::MatrixXd vel = d1_ * c;
    const Eigen::MatrixXd acc = d2_ * c;
    for (Eigen::Index k = 0; k < vel.rows(); ++k) {
      const Point v = vel.row(k).transpose();
      const Point a = acc.row(k).transpose();
      const double speed = std::max(v.norm(), 1e-9);
      const double cr = cross2(v, a);
      Point dv = Point::Zero();
      Point da = Point::Zero();
      auto add = [&](double r, const Point& gv, const Point& ga) {
        pen += r * r;
        dv += 2.0 * r * gv;
        da += 2.0 * r * ga;
      };
      const Point unit = v / speed;
      if (speed > v_hi_) add(speed / v_hi_ - 1.0, unit / v_hi_, Point::Zero());
      if (speed < v_lo_) add(1.0 - speed / v_lo_, -unit / v_lo_, Point::Zero());
      // d(cross)/dv = (a_y, -a_x), d(cross)/da = (-v_y, v_x)
      const Point dcr_dv(a.y(), -a.x());
      const Point dcr_da(-v.y(), v.x());
      const double s2 = speed * speed;
      const double u = cr / s2;
      const Point du_dv = dcr_dv / s2 - 2.0 * cr * v / (s2 * s2);
      const Point du_da = dcr_da / s2;
      if (u > u_hi_) add(u / u_hi_ - 1.0, du_dv / u_hi_, du_da / u_hi_);
      if (u < u_lo_) add(u / u_lo_ - 1.0, du_dv / u_lo_, du_da / u_lo_);
      const double chi = cr / (s2 * speed);
      if (std::abs(chi) > chi_hi_) {
        const double sg = chi > 0 ? 1.0 : -1.0;
        const Point dchi_dv =
            dcr_dv / (s2 * speed) - 3.0 * cr * v / (s2 * s2 * speed);
        const Point dchi_da = dcr_da / (s2 * speed);
        add(std::abs(chi) / chi_hi_ - 1.0, sg * dchi_dv / chi_hi_,
            sg * dchi_da / chi_hi_);
      }
      if (grad) {
        g_vel.row(k) = -mu * dv.transpose();
        g_acc.row(k) = -mu * da.transpose();
      }
    }

    const Eigen::MatrixXd vq = dq_ * c;
    double length = 0.0;
    for (Eigen::Index k = 0; k < vq.rows(); ++k) length += wq_[k] * vq.row(k).norm();
    if (length > cap_hi_) {
      const double r = length / cap_hi_ - 1.0;
      pen += r * r;
      if (grad) {
        for (Eigen::Index k = 0; k < vq.rows(); ++k) {
          const double sp = std::max(vq.row(k).norm(), 1e-12);
          g_len.row(k) = -mu * 2.0 * r / cap_hi_ * wq_[k] * vq.row(k) / sp;
        }
      }
    }

    if (grad) {
      *grad = basis_.transpose() * g_pos + d1_.transpose() * g_vel +
              d2_.transpose() * g_acc + dq_.transpose() * g_len;
    }
    return psi - mu * pen;
  }

 private:
  static SensorModel widened(SensorModel s, double factor) {
    s.beta_s *= factor;
    return s;
  }

  std::vector<Point> samples_of(const Eigen::MatrixXd& c) const {
    const Eigen::MatrixXd p = basis_ * c;
    std::vector<Point> out(p.rows());
    for (Eigen::Index j = 0; j < p.rows(); ++j) out[j] = p.row(j).transpose();
    return out;
  }

  const EdgeTask& task_;
  const OptimizerConfig& cfg_;
  DetectionObjective objective_;
  DetectionObjective smooth_;  // wider kernel, used for the first stage
  int n_;
  int order_;
  double t_final_ = 0.0;
  std::array<Point, 2> fixed_first_;
  std::array<Point, 2> fixed_last_;
  double v_lo_, v_hi_, u_lo_, u_hi_, chi_hi_, cap_hi_;
  Eigen::MatrixXd basis_, d1_, d2_, dq_;
  std::vector<double> wq_;
};

}  // namespace

namespace {

// In-family straight line as a control matrix.
Eigen::MatrixXd line_controls(const PathProblem& prob) {
  const auto line = prob.straight_line();
  Eigen::MatrixXd c(prob.n(), 2);
  for (int i = 0; i < prob.n(); ++i) c.row(i) = line[i].transpose();
  return c;
}

// Candidate start shapes: lateral bulges and S-curves of several heights on
// both sides, plus random perturbations. Heights are fractions of the
// cap-filling triangle height.
std::vector<Eigen::MatrixXd> seed_pool(const PathProblem& prob,
                                       const EdgeTask& task, Rng& rng) {
  std::vector<Eigen::MatrixXd> pool;
  if (prob.n_free() == 0) return pool;
  const Eigen::MatrixXd base = line_controls(prob);
  const Point chord = task.goal - task.start;
  const double len = chord.norm();
  const Point dir = len > 0 ? Point(chord / len) : Point(1.0, 0.0);
  const Point normal(-dir.y(), dir.x());
  const double half_cap = 0.5 * task.cap;
  const double h_max =
      std::sqrt(std::max(0.0, half_cap * half_cap - 0.25 * len * len));

  const int n = prob.n();
  auto shaped = [&](double height, auto profile) {
    Eigen::MatrixXd c = base;
    for (int i = 2; i < n - 2; ++i) {
      const double f = static_cast<double>(i - 1) / (n - 3);
      c.row(i) += (height * profile(f) * normal).transpose();
    }
    return c;
  };
  const double pi = std::numbers::pi;
  for (double frac : {0.3, 0.6, 0.9}) {
    for (double side : {1.0, -1.0}) {
      const double h = side * frac * h_max;
      pool.push_back(shaped(h, [&](double f) { return std::sin(pi * f); }));
      pool.push_back(shaped(0.6 * h, [&](double f) { return std::sin(2 * pi * f); }));
      pool.push_back(shaped(h, [&](double f) { return std::sin(pi * f * f); }));
      pool.push_back(
          shaped(h, [&](double f) { return std::sin(pi * (2 * f - f * f)); }));
    }
  }
  std::normal_distribution<double> jitter(0.0, 1.0);
  for (int k = 0; k < 4; ++k) {
    Eigen::MatrixXd c = base;
    for (int i = 2; i < n - 2; ++i) {
      c.row(i) += (0.4 * h_max * jitter(rng) * normal +
                   0.1 * len * jitter(rng) * dir)
                      .transpose();
    }
    pool.push_back(std::move(c));
  }
  return pool;
}

// Penalty-escalated quasi-Newton (BFGS) ascent on the free rows, with a
// backtracking line search. `max_iterations` bounds the total number of
// accepted steps over all penalty rounds.
Eigen::MatrixXd ascend(const PathProblem& prob, Eigen::MatrixXd c,
                       const OptimizerConfig& cfg, int max_iterations,
                       bool smooth = false) {
  if (prob.n_free() == 0) return c;
  const int lo = 2, count = prob.n_free();
  const int dim = 2 * count;
  auto flat = [&](const Eigen::MatrixXd& m) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < count; ++i) {
      v(2 * i) = m(lo + i, 0);
      v(2 * i + 1) = m(lo + i, 1);
    }
    return v;
  };
  auto moved = [&](const Eigen::MatrixXd& base, const Eigen::VectorXd& step) {
    Eigen::MatrixXd out = base;
    for (int i = 0; i < count; ++i) {
      out(lo + i, 0) += step(2 * i);
      out(lo + i, 1) += step(2 * i + 1);
    }
    return out;
  };

  int used = 0;
  Eigen::MatrixXd grad;
  for (double mu = cfg.mu_initial; mu <= cfg.mu_max * (1 + 1e-12);
       mu *= cfg.mu_growth) {
    double f = prob.evaluate(c, mu, &grad, smooth);
    Eigen::VectorXd g = flat(grad);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim);
    bool scaled = false;
    while (used < max_iterations) {
      if (!(g.norm() > 1e-12)) break;
      Eigen::VectorXd d = h * g;
      if (!(d.dot(g) > 0)) {
        h.setIdentity();
        scaled = false;
        d = g;
      }
      double alpha = 1.0;
      if (!scaled) alpha = cfg.initial_step / d.norm();
      alpha = std::min(alpha, cfg.max_step / d.norm());
      const double slope = d.dot(g);
      bool accepted = false;
      Eigen::MatrixXd trial;
      double ft = 0.0;
      while (alpha * d.norm() >= cfg.min_step) {
        trial = moved(c, alpha * d);
        ft = prob.evaluate(trial, mu, nullptr, smooth);
        if (ft >= f + 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
      ++used;
      const Eigen::VectorXd step = alpha * d;
      c = std::move(trial);
      const double f_old = f;
      f = prob.evaluate(c, mu, &grad, smooth);
      const Eigen::VectorXd g_new = flat(grad);
      const Eigen::VectorXd y = g - g_new;  // gradient change of -F
      const double sy = step.dot(y);
      if (sy > 1e-12) {
        if (!scaled) {
          h *= sy / y.squaredNorm();
          scaled = true;
        }
        const double rho = 1.0 / sy;
        const Eigen::MatrixXd left =
            Eigen::MatrixXd::Identity(dim, dim) - rho * step * y.transpose();
        h = left * h * left.transpose() + rho * step * step.transpose();
      }
      g = g_new;
      if (std::abs(f - f_old) <= 1e-10 * (1.0 + std::abs(f))) break;
    }
  }
  return c;
}

}  // namespace

std::optional<PlannedPath> optimize_candidates(const EdgeTask& task,
                                               const VehicleLimits& limits,
                                               const OptimizerConfig& cfg) {
  if (task.belief == nullptr) throw InvalidArgument("edge task has no belief");
  if (cfg.restarts < 1) throw InvalidArgument("optimizer needs restarts >= 1");
  if (cfg.control_points < cfg.order || cfg.control_points < 4) {
    throw InvalidArgument("optimizer needs at least max(order, 4) control points");
  }
  const double chord = (task.goal - task.start).norm();
  if (!(task.cap > 0) || task.cap * (1.0 - cfg.length_margin) <= chord) {
    return std::nullopt;
  }
  PathProblem prob(task, limits, cfg);
  Rng rng = make_stream(cfg.seed, Stream::kOptimizer);

  // Restart 0 starts from the straight line; the others from the best
  // screened shapes under the strictest penalty weight.
  std::vector<Eigen::MatrixXd> starts{line_controls(prob)};
  auto pool = seed_pool(prob, task, rng);
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    pool[k] = ascend(prob, pool[k], cfg, cfg.screen_iterations, true);
    ranked.emplace_back(prob.evaluate(pool[k], cfg.mu_max, nullptr), k);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0;
       k < ranked.size() && static_cast<int>(starts.size()) < cfg.restarts; ++k) {
    starts.push_back(pool[ranked[k].second]);
  }

  std::optional<PlannedPath> best;
  auto refine = [&](const Eigen::MatrixXd& start) {
    Eigen::MatrixXd c = ascend(prob, start, cfg, cfg.max_iterations / 2, true);
    c = ascend(prob, c, cfg, cfg.max_iterations - cfg.max_iterations / 2);
    SplinePath path = prob.to_path(c);
    const auto rep = check_feasibility(path, limits, task.cap, cfg.domain,
                                       4 * cfg.samples, cfg.constraint_tol);
    if (!rep.feasible) return;
    const double psi = prob.psi(c);
    if (!best || psi > best->psi) best = PlannedPath{std::move(path), psi, false};
  };
  for (const auto& start : starts) refine(start);
  // Nothing feasible yet: walk further down the ranking, same count again.
  for (std::size_t k = starts.size() - 1, extra = 0;
       !best && k < ranked.size() && extra < starts.size(); ++k, ++extra) {
    refine(pool[ranked[k].second]);
  }
  return best;
}

PlannedPath optimize_edge_path(const EdgeTask& task, const VehicleLimits& limits,
                               const OptimizerConfig& cfg) {
  if (task.belief == nullptr) throw InvalidArgument("edge task has no belief");
  if (task.cells.empty()) throw InvalidArgument("edge task has no cells");
  const double chord = (task.goal - task.start).norm();
  if (task.cap < chord * (1.0 - 1e-12)) {
    throw CapBelowChord("edge cap is shorter than the chord");
  }
  SplinePath straight = straight_spline(task.start, task.goal, cfg.v_cruise,
                                        cfg.order, cfg.control_points);
  DetectionObjective objective(*task.belief, task.cells, cfg.sensor);
  const double psi_straight =
      objective.value(sample_positions(straight, cfg.samples));
  auto best = optimize_candidates(task, limits, cfg);
  if (best && best->psi > psi_straight) return std::move(*best);
  return PlannedPath{std::move(straight), psi_straight, true};
}

}  // namespace hazardscout
