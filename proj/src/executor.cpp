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

#include "hazardscout/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "hazardscout/augment.hpp"
#include "hazardscout/error.hpp"
#include "hazardscout/metrics.hpp"

namespace hazardscout {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kOnline: return "online";
    case Strategy::kOffline: return "offline";
    case Strategy::kLawnmower: return "lawnmower";
    case Strategy::kStraight: return "straight";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  for (Strategy s : all_strategies()) {
    if (name == to_string(s)) return s;
  }
  throw InvalidArgument("unknown strategy '" + name + "'");
}

std::vector<Strategy> all_strategies() {
  return {Strategy::kOnline, Strategy::kOffline, Strategy::kLawnmower,
          Strategy::kStraight};
}

double belief_change(std::span<const double> belief,
                     std::span<const double> reference,
                     std::span<const std::size_t> cells) {
  if (belief.size() != reference.size()) {
    throw GridMismatch("belief and reference differ in size");
  }
  if (cells.empty()) throw InvalidArgument("belief change over an empty cell set");
  double sum = 0.0;
  for (std::size_t c : cells) sum += std::abs(belief[c] - reference[c]);
  return sum / static_cast<double>(cells.size());
}

bool replan_gate(double delta_b, double eps_b, double d_rem, double l_rem,
                 double delta) {
  return delta_b >= eps_b && d_rem >= l_rem + delta;
}

bool accept_replan(double j_new, double j_old_rem, double delta_psi) {
  return j_new >= j_old_rem + delta_psi;
}

double polyline_length(std::span<const Point> pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += (pts[i] - pts[i - 1]).norm();
  return len;
}

std::vector<Point> resample_polyline(std::span<const Point> pts,
                                     double spacing) {
  if (!(spacing > 0)) throw InvalidArgument("resample spacing must be positive");
  std::vector<Point> out;
  if (pts.empty()) return out;
  out.push_back(pts.front());
  double carry = 0.0;  // distance walked since the last emitted point
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Point seg = pts[i] - pts[i - 1];
    const double len = seg.norm();
    double at = spacing - carry;
    while (at <= len) {
      out.push_back(pts[i - 1] + (at / len) * seg);
      at += spacing;
    }
    carry = len - (at - spacing);
  }
  return out;
}

namespace {

// Rounds every interior corner with an arc of radius at most `r_max`,
// shrunk so that the arcs of neighboring corners do not overlap.
std::vector<Point> fillet_polyline(const std::vector<Point>& pts, double r_max) {
  if (pts.size() < 3) return pts;
  std::vector<Point> out{pts.front()};
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Point in = pts[i] - pts[i - 1];
    const Point outv = pts[i + 1] - pts[i];
    const double l_in = in.norm(), l_out = outv.norm();
    if (l_in == 0 || l_out == 0) {
      out.push_back(pts[i]);
      continue;
    }
    const Point d_in = in / l_in, d_out = outv / l_out;
    const double cosang = std::clamp(d_in.dot(d_out), -1.0, 1.0);
    const double theta = std::acos(cosang);  // heading change
    if (theta < 1e-9) {
      out.push_back(pts[i]);
      continue;
    }
    const double tan_half = std::tan(0.5 * theta);
    const double r = std::min(r_max, 0.5 * std::min(l_in, l_out) / tan_half);
    const double t = r * tan_half;
    const Point t1 = pts[i] - t * d_in;
    const double turn = d_in.x() * d_out.y() - d_in.y() * d_out.x() > 0 ? 1.0 : -1.0;
    const Point normal(-turn * d_in.y(), turn * d_in.x());
    const Point center = t1 + r * normal;
    const int steps = std::max(2, static_cast<int>(std::ceil(theta / 0.05)));
    const Point from = t1 - center;
    for (int k = 0; k <= steps; ++k) {
      const double a = turn * theta * k / steps;
      const double c = std::cos(a), s = std::sin(a);
      out.push_back(center + Point(c * from.x() - s * from.y(),
                                   s * from.x() + c * from.y()));
    }
  }
  out.push_back(pts.back());
  return out;
}

std::vector<Point> sweep_corners(const Segment& edge, double amplitude, int m,
                                 int side) {
  const Point chord = edge.b - edge.a;
  const double len = chord.norm();
  const Point ex = chord / len;
  const Point ey(-ex.y(), ex.x());
  auto frame = [&](double x, double y) -> Point {
    return edge.a + x * ex + y * ey;
  };
  const int n = m + 1;  // vertical legs
  std::vector<Point> pts{edge.a};
  double y = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double x = len * i / (n + 1);
    pts.push_back(frame(x, y));
    if (i == n) {
      y = 0.0;
    } else {
      y = (i % 2 == 1 ? side : -side) * amplitude;
    }
    pts.push_back(frame(x, y));
  }
  pts.push_back(edge.b);
  return pts;
}

}  // namespace

std::vector<Point> lawnmower_path(const Segment& edge, double cap,
                                  const VehicleLimits& limits, int side) {
  const double len = edge.length();
  if (len == 0.0) throw DegenerateSegment("lawnmower over a zero-length edge");
  if (cap < len * (1.0 - 1e-12)) {
    throw CapBelowChord("lawnmower cap is shorter than the chord");
  }
  const double extra = cap - len;
  if (extra < 1e-6) return {edge.a, edge.b};
  constexpr double kMaxAmplitude = 150.0;
  const double turn_radius = 1.0 / limits.chi_max;
  // As many legs as the turn radius allows: lanes and the outer legs each
  // at least one turn diameter long, so no fillet is shrunk. More legs are
  // added when the amplitude cap would otherwise leave budget unused.
  const int by_spacing =
      static_cast<int>(std::floor(len / (2.0 * turn_radius))) - 1;
  const int by_amplitude =
      static_cast<int>(std::floor(extra / (4.0 * turn_radius)));
  const int n_min =
      std::max(2, static_cast<int>(std::ceil(extra / (2.0 * kMaxAmplitude))) + 1);
  int n = std::max(std::min(by_spacing, by_amplitude), n_min);
  const double r_max = turn_radius;
  auto build = [&](double amp, int legs) {
    return fillet_polyline(
        sweep_corners(edge, amp, legs - 1, side >= 0 ? 1 : -1), r_max);
  };
  // Largest amplitude whose filleted sweep still fits the cap.
  auto fit = [&](int legs) {
    double lo = 0.0, hi = kMaxAmplitude;
    if (polyline_length(build(hi, legs)) <= cap) return hi;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (polyline_length(build(mid, legs)) <= cap) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  };
  double lo = fit(n);
  while (n > n_min && lo < 2.0 * turn_radius) lo = fit(--n);
  if (lo <= 0.0) return {edge.a, edge.b};
  auto pts = build(lo, n);
  pts.front() = edge.a;
  pts.back() = edge.b;
  return pts;
}

MissionPlan plan_mission(const ScenarioInstance& inst,
                         const MissionConfig& cfg) {
  MissionPlan plan;
  const RouteNode depot{inst.depot, NodeKind::kDepot, 0};
  std::vector<RouteNode> rois;
  std::vector<Point> centers;
  for (std::size_t i = 0; i < inst.reports.size(); ++i) {
    rois.push_back({inst.reports[i].center, NodeKind::kRoi,
                    static_cast<int>(i) + 1});
    centers.push_back(inst.reports[i].center);
  }
  plan.roi_route = solve_route(depot, rois, cfg.budget_m);
  const auto roi_edges = plan.roi_route.edges();

  plan.pseudo_requested = cfg.n_pseudo;
  plan.route = plan.roi_route;
  for (int np = cfg.n_pseudo; np > 0; --np) {
    CvtConfig cc;
    cc.n_pseudo = np;
    cc.alpha_rho = cfg.alpha_rho;
    cc.beta_rho = cfg.beta_rho;
    cc.iterations = cfg.cvt_iterations;
    cc.samples_per_iter = cfg.cvt_samples;
    if (cfg.cvt_mode == "node") cc = cc.node_based();
    Rng rng = make_stream(inst.seed, Stream::kAugment);
    auto pseudo = cvt_pseudo_nodes(centers, roi_edges, cfg.domain, cc, rng);
    try {
      plan.route = augment_route(plan.roi_route, pseudo, cfg.budget_m);
      plan.pseudo_nodes = std::move(pseudo);
      plan.pseudo_used = np;
      break;
    } catch (const BudgetInfeasible&) {
      continue;
    }
  }

  plan.edges = plan.route.edges();
  if (plan.edges.empty()) throw InvalidArgument("route has no edges");
  plan.partition = segment_voronoi_partition(*inst.grid, plan.edges);
  const double marginal = marginal_budget(cfg.budget_m, plan.edges);
  if (cfg.area_only_allocation) {
    plan.budgets =
        allocate_budgets(plan.edges, plan.partition, std::nullopt, marginal);
  } else {
    const BeliefGrid b0 = initial_belief(inst.reports, cfg, inst.grid);
    const auto scores =
        mean_belief_scores(b0, plan.partition, plan.edges.size());
    plan.budgets = allocate_budgets(plan.edges, plan.partition,
                                    std::span<const double>(scores), marginal);
  }
  return plan;
}

namespace {

// Dense polyline being flown, with a cursor.
class ActivePath {
 public:
  explicit ActivePath(std::vector<Point> pts) : pts_(std::move(pts)) {
    build();
  }

  ActivePath(const SplinePath& spline, double resolution) : spline_(spline) {
    const double len = arc_length(spline);
    const int n = std::max(
        41, static_cast<int>(std::ceil(len / resolution)) + 1);
    tau_ = uniform_times(spline.t_final(), n);
    pts_.reserve(n);
    for (double t : tau_) pts_.push_back(spline.eval(t));
    build();
  }

  double length() const { return cum_.back(); }
  double remaining() const { return length() - offset_; }

  /// Moves forward by `dist` (clamped to the end); passed vertices go to
  /// `trail`.
  void advance(double dist, std::vector<Point>* trail) {
    const double target = std::min(offset_ + dist, length());
    while (seg_ + 1 < pts_.size() - 1 && cum_[seg_ + 1] <= target) {
      ++seg_;
      trail->push_back(pts_[seg_]);
    }
    offset_ = target;
    if (offset_ >= length() && trail->back() != pts_.back()) {
      trail->push_back(pts_.back());
    }
  }

  Point position() const {
    if (offset_ >= length()) return pts_.back();
    const double span = cum_[seg_ + 1] - cum_[seg_];
    const double f = span > 0 ? (offset_ - cum_[seg_]) / span : 0.0;
    return pts_[seg_] + f * (pts_[seg_ + 1] - pts_[seg_]);
  }

  Point tangent() const {
    if (spline_) {
      const double span = cum_[seg_ + 1] - cum_[seg_];
      const double f =
          span > 0 ? std::clamp((offset_ - cum_[seg_]) / span, 0.0, 1.0) : 0.0;
      const double t = tau_[seg_] + f * (tau_[seg_ + 1] - tau_[seg_]);
      const Point v = spline_->eval(std::min(t, spline_->t_final()), 1);
      if (v.norm() > 1e-9) return v.normalized();
    }
    const Point d = pts_[seg_ + 1] - pts_[seg_];
    return d.norm() > 0 ? Point(d.normalized()) : Point(1.0, 0.0);
  }

  /// Current position followed by the vertices still ahead.
  std::vector<Point> ahead() const {
    std::vector<Point> out{position()};
    for (std::size_t i = seg_ + 1; i < pts_.size(); ++i) {
      if (cum_[i] > offset_) out.push_back(pts_[i]);
    }
    return out;
  }

 private:
  void build() {
    if (pts_.size() < 2) pts_.push_back(pts_.back());
    cum_.assign(pts_.size(), 0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      cum_[i] = cum_[i - 1] + (pts_[i] - pts_[i - 1]).norm();
    }
  }

  std::vector<Point> pts_;
  std::vector<double> cum_;
  std::vector<double> tau_;
  std::optional<SplinePath> spline_;
  std::size_t seg_ = 0;
  double offset_ = 0.0;
};

constexpr double kPathResolution = 1.0;  // m between dense path vertices

std::vector<Point> clamp_all(std::vector<Point> pts, const Domain& d) {
  for (Point& p : pts) p = d.clamp(p);
  return pts;
}

}  // namespace

void execute_edge(const ExecutionContext& ctx, const MissionPlan& plan,
                  int edge, Strategy strategy, BeliefGrid& belief, Rng& noise,
                  MissionResult* result) {
  const MissionConfig& cfg = *ctx.cfg;
  const ScenarioInstance& inst = *ctx.instance;
  const Segment& seg = plan.edges.at(edge);
  const double cap = plan.budgets.at(edge).cap();
  const std::vector<std::size_t> cells = plan.partition.cells_of(edge);
  const double chord = seg.length();
  const Point dir = (seg.b - seg.a) / chord;

  auto optimizer_for = [&](int replan) {
    OptimizerConfig o = ctx.optimizer;
    o.seed = mix_seed({inst.seed, static_cast<std::uint64_t>(edge),
                       static_cast<std::uint64_t>(replan)});
    return o;
  };

  std::optional<ActivePath> active;
  switch (strategy) {
    case Strategy::kStraight:
      active.emplace(std::vector<Point>{seg.a, seg.b});
      break;
    case Strategy::kLawnmower: {
      auto best = clamp_all(lawnmower_path(seg, cap, ctx.limits, 1), cfg.domain);
      auto other = clamp_all(lawnmower_path(seg, cap, ctx.limits, -1), cfg.domain);
      if (polyline_length(other) > polyline_length(best)) best = std::move(other);
      active.emplace(std::move(best));
      break;
    }
    case Strategy::kOnline:
    case Strategy::kOffline: {
      if (cells.empty()) {
        active.emplace(std::vector<Point>{seg.a, seg.b});
        break;
      }
      EdgeTask task;
      task.start = seg.a;
      task.goal = seg.b;
      task.entry_velocity = cfg.v_cruise * dir;
      task.exit_velocity = cfg.v_cruise * dir;
      task.cells = cells;
      task.cap = cap;
      task.belief = &belief;
      const auto planned = optimize_edge_path(task, ctx.limits, optimizer_for(0));
      active.emplace(planned.path, kPathResolution);
      break;
    }
  }

  EdgeResult er;
  er.cap = cap;
  std::vector<Point>& trail = result->trajectory;
  if (trail.empty() || trail.back() != seg.a) trail.push_back(seg.a);
  std::vector<double> reference = belief.probs();
  const bool online = strategy == Strategy::kOnline && !cells.empty();
  double traveled = 0.0;
  double next = 0.0;
  int replans = 0;

  while (true) {
    const double rem = active->remaining();
    const double gap = next - traveled;
    if (gap > rem + 1e-9) {
      active->advance(rem, &trail);
      traveled += rem;
      break;
    }
    const double move = std::min(gap, rem);
    active->advance(move, &trail);
    traveled += move;
    next += cfg.measurement_spacing;
    const Point pos = active->position();
    if (trail.back() != pos) trail.push_back(pos);

    double y;
    try {
      y = simulate_measurement(inst.truth.p_true, *inst.grid, pos, ctx.sensor,
                               noise);
    } catch (const EmptyNeighborhood&) {
      continue;
    }
    ekf_update(belief, {pos, y}, ctx.sensor);
    if (cfg.diffusion_rate > 0) diffuse(belief, cfg.diffusion_rate);
    ++er.measurements;

    LogRow row;
    row.step = result->measurements + er.measurements - 1;
    row.position = pos;
    row.y = y;
    row.edge = edge;

    if (online) {
      const double db = belief_change(belief.probs(), reference, cells);
      const double d_rem = cap - traveled;
      const double l_rem = (seg.b - pos).norm();
      if (replan_gate(db, cfg.eps_b, d_rem, l_rem, cfg.delta)) {
        const auto t0 = std::chrono::steady_clock::now();
        row.triggered = true;
        ++er.triggered;
        ++replans;
        EdgeTask task;
        task.start = pos;
        task.goal = seg.b;
        task.entry_velocity = cfg.v_cruise * active->tangent();
        task.exit_velocity = cfg.v_cruise * dir;
        task.cells = cells;
        task.cap = d_rem;
        task.belief = &belief;
        const auto cand =
            optimize_candidates(task, ctx.limits, optimizer_for(replans));
        if (cand) {
          ActivePath fresh(cand->path, kPathResolution);
          const double j_new = eig_score(
              resample_polyline(fresh.ahead(), cfg.measurement_spacing), belief,
              cells, ctx.sensor);
          const double j_old = eig_score(
              resample_polyline(active->ahead(), cfg.measurement_spacing),
              belief, cells, ctx.sensor);
          if (accept_replan(j_new, j_old, cfg.delta_psi)) {
            active.emplace(std::move(fresh));
            row.accepted = true;
            ++er.accepted;
          }
        }
        reference = belief.probs();
        er.replan_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count());
      }
    }
    if (ctx.keep_log) result->log.push_back(row);
  }

  er.length = traveled;
  result->measurements += er.measurements;
  result->triggered += er.triggered;
  result->accepted += er.accepted;
  for (double s : er.replan_seconds) result->replan_seconds += s;
  result->executed_length += er.length;
  result->edges.push_back(std::move(er));
}

MissionResult run_mission(const ScenarioInstance& inst, const MissionPlan& plan,
                          Strategy strategy, const MissionConfig& cfg,
                          Rng& noise, bool keep_log) {
  ExecutionContext ctx;
  ctx.instance = &inst;
  ctx.cfg = &cfg;
  ctx.limits = VehicleLimits::from_config(cfg);
  ctx.optimizer = OptimizerConfig::from_config(cfg);
  ctx.sensor = SensorModel::from_config(cfg);
  ctx.keep_log = keep_log;

  BeliefGrid belief = initial_belief(inst.reports, cfg, inst.grid);
  const std::vector<double> b0 = belief.probs();
  MissionResult result;
  result.strategy = strategy;
  for (std::size_t k = 0; k < plan.edges.size(); ++k) {
    execute_edge(ctx, plan, static_cast<int>(k), strategy, belief, noise,
                 &result);
  }
  result.final_belief = belief.probs();
  result.final_variance = belief.variances();
  result.kl_initial = bernoulli_kl(inst.truth.p_true, b0, cfg.kl_eps);
  result.kl_final =
      bernoulli_kl(inst.truth.p_true, result.final_belief, cfg.kl_eps);
  result.dkl = result.kl_initial - result.kl_final;

  for (const RouteNode& n : plan.route.nodes) {
    if (n.kind != NodeKind::kRoi) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const Point& p : result.trajectory) {
      best = std::min(best, (p - n.position).norm());
    }
    result.roi_miss = std::max(result.roi_miss, best);
  }
  return result;
}

MissionResult run_mission(const ScenarioInstance& inst, const MissionPlan& plan,
                          Strategy strategy, const MissionConfig& cfg,
                          bool keep_log) {
  Rng noise = make_stream(inst.seed, Stream::kNoise);
  return run_mission(inst, plan, strategy, cfg, noise, keep_log);
}

}  // namespace hazardscout
