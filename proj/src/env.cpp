// Copyright 2026 The reap-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reap_sim/env.hpp"

#include <algorithm>

namespace reap_sim
{

namespace
{

constexpr int kSpawnAttempts = 100;

void bad(const char * what) { throw Error(ErrorCode::kInvalidParameter, what); }

std::shared_ptr<const Grid<double>> occupancy_as_double(const OccupancyGrid & occ)
{
  auto out = std::make_shared<Grid<double>>(occ.meta, 0.0);
  for (std::size_t i = 0; i < occ.data.size(); ++i) {
    out->data[i] = occ.data[i] ? 1.0 : 0.0;
  }
  return out;
}

// Same arithmetic as sample_bilinear, computed once per pixel for several
// rasters on one grid.
struct Bilinear
{
  std::size_t i00, i10, i01, i11;
  double tx, ty;

  double apply(const Grid<double> & g) const
  {
    const double top = g.data[i00] * (1.0 - tx) + g.data[i10] * tx;
    const double bot = g.data[i01] * (1.0 - tx) + g.data[i11] * tx;
    return top * (1.0 - ty) + bot * ty;
  }
};

std::optional<Bilinear> bilinear_weights(const GridMeta & m, const Vec2 & p)
{
  const double gx = (p.x - m.origin_x) / m.resolution;
  const double gy = (p.y - m.origin_y) / m.resolution;
  if (gx < -0.5 || gy < -0.5 || gx > m.width - 0.5 || gy > m.height - 0.5) {
    return std::nullopt;
  }
  const double fx = std::clamp(gx, 0.0, m.width - 1.0);
  const double fy = std::clamp(gy, 0.0, m.height - 1.0);
  const int x0 = std::min(static_cast<int>(fx), std::max(m.width - 2, 0));
  const int y0 = std::min(static_cast<int>(fy), std::max(m.height - 2, 0));
  const int x1 = std::min(x0 + 1, m.width - 1);
  const int y1 = std::min(y0 + 1, m.height - 1);
  return Bilinear{m.index(x0, y0), m.index(x1, y0), m.index(x0, y1), m.index(x1, y1), fx - x0, fy - y0};
}

// heatmap_value with the slot frame and widths hoisted out of the pixel loop.
struct GateEval
{
  GateEval(const ParkingSlot & slot, const GateParams & gate)
  : cx(slot.cx), cy(slot.cy), c(std::cos(slot.heading)), s(std::sin(slot.heading))
  {
    const double su = slot.length * gate.sigma_length_fraction;
    const double sw = slot.width * gate.sigma_width_fraction;
    const double sg = su * gate.gamma;
    ku = 1.0 / (2.0 * su * su);
    kw = 1.0 / (2.0 * sw * sw);
    kg = 1.0 / (2.0 * sg * sg);
  }

  float operator()(const Vec2 & p) const
  {
    const double dx = p.x - cx;
    const double dy = p.y - cy;
    const double u = c * dx + s * dy;
    const double w = -s * dx + c * dy;
    double e = u * u * ku + w * w * kw;
    if (u < 0.0) {
      e += u * u * kg;
    }
    // exp(-e) already rounds to 0.0f well before this.
    return e > 120.0 ? 0.0f : static_cast<float>(std::exp(-e));
  }

  double cx, cy, c, s, ku, kw, kg;
};

double center_offset(const VehicleParams & p)
{
  return 0.5 * (p.wheelbase + p.front_overhang - p.rear_overhang);
}

}  // namespace

void EnvConfig::validate() const
{
  vehicle.validate();
  thresholds.validate();
  reward.validate();
  if (!(dt > 0.0)) {
    bad("dt must be positive");
  }
  if (n_samples < 1) {
    bad("n_samples must be at least 1");
  }
  if (max_steps < 1) {
    bad("max_steps must be at least 1");
  }
  if (!(obs.resolution > 0.0) || !(obs.range > 0.0) || obs.cells() < 1) {
    bad("observation resolution and range must be positive");
  }
  if (!(perturb.dx_max >= 0.0) || !(perturb.dtheta_max >= 0.0)) {
    bad("perturbation limits must be non-negative");
  }
  if (!(gate.gamma > 0.0) || !(gate.sigma_length_fraction > 0.0) || !(gate.sigma_width_fraction > 0.0)) {
    bad("gate parameters must be positive");
  }
  if (!(d0 > 0.0) || !(tau > 0.0)) {
    bad("d0 and tau must be positive");
  }
  if (max_neighbors < 0) {
    bad("max_neighbors must be non-negative");
  }
  if (!(neighbor.length > 0.0) || !(neighbor.width > 0.0) || !(neighbor.height >= 0.0)) {
    bad("neighbor box must have positive size");
  }
  if (!(budget.per_query_s >= 0.0) || !(budget.episode_remaining_s >= 0.0) || !(budget.seconds_per_check > 0.0)) {
    bad("planning budget must be non-negative");
  }
  if (!(rs_check_step > 0.0) || rs_check_step > 0.1) {
    bad("rs_check_step must lie in (0, 0.1]");
  }
}

Env::Env(std::shared_ptr<const Scenario> scenario, EnvConfig config)
: scenario_(std::move(scenario)), config_(std::move(config))
{
  if (!scenario_) {
    bad("env requires a scenario");
  }
  config_.validate();
  scenario_->validate();
  // Aliasing constructor: the rasters live as long as the scenario.
  elevation_ = std::shared_ptr<const ElevationMap>(scenario_, &scenario_->elevation);
  if (config_.d0 == scenario_->tsdf.d0 && config_.tau == scenario_->tsdf.tau) {
    base_tsdf_ = std::shared_ptr<const TsdfField>(scenario_, &scenario_->tsdf);
  } else {
    base_tsdf_ = std::make_shared<TsdfField>(
      tsdf_from_distance(euclidean_distance_transform(scenario_->occupancy), config_.d0, config_.tau));
  }
  base_occupancy_f_ = occupancy_as_double(scenario_->occupancy);
  tsdf_ = base_tsdf_;
  occupancy_f_ = base_occupancy_f_;
  ctx_.max_steps = config_.max_steps;
}

const ParkingSlot & Env::target_slot() const
{
  if (slot_id_ < 0) {
    bad("env has not been reset");
  }
  return scenario_->slots[static_cast<std::size_t>(slot_id_)];
}

bool Env::out_of_bounds(const VehicleState & s) const
{
  for (const auto & c : footprint(s, config_.vehicle, FootprintLayer::kFull).corners()) {
    if (!scenario_->bounds.contains(c)) {
      return true;
    }
  }
  return false;
}

bool Env::start_is_valid(const VehicleState & s) const
{
  if (out_of_bounds(s)) {
    return false;
  }
  try {
    return !check_state(s, config_.vehicle, *elevation_, config_.thresholds).colliding;
  } catch (const Error & e) {
    if (e.code() == ErrorCode::kOutOfMap) {
      return false;
    }
    throw;
  }
}

std::optional<ExpertPlan> Env::query_expert()
{
  PlanningBudget b = budget_;
  auto plan = expert_action(
    state_, target_slot(), *elevation_, config_.vehicle, config_.thresholds, b, config_.dt,
    config_.rs_check_step);
  budget_.episode_remaining_s = b.episode_remaining_s;
  return plan;
}

Observation Env::reset(std::uint64_t seed, const ResetOptions & options)
{
  Rng rng(seed);
  const Scenario & sc = *scenario_;

  if (options.slot_id) {
    if (*options.slot_id < 0 || static_cast<std::size_t>(*options.slot_id) >= sc.slots.size()) {
      bad("slot_id out of range");
    }
    slot_id_ = *options.slot_id;
  } else {
    slot_id_ = static_cast<int>(rng.below(sc.slots.size()));
  }
  const ParkingSlot & target = sc.slots[static_cast<std::size_t>(slot_id_)];

  // Neighbors go into other slots whose centers lie within one slot length.
  std::vector<int> candidates;
  for (std::size_t i = 0; i < sc.slots.size(); ++i) {
    if (static_cast<int>(i) != slot_id_ && (sc.slots[i].center() - target.center()).norm() <= target.length) {
      candidates.push_back(static_cast<int>(i));
    }
  }
  const auto limit = std::min<std::size_t>(static_cast<std::size_t>(config_.max_neighbors), candidates.size());
  const auto count = static_cast<std::size_t>(rng.below(limit + 1));
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  neighbors_.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(count));

  if (neighbors_.empty()) {
    elevation_ = std::shared_ptr<const ElevationMap>(scenario_, &scenario_->elevation);
    tsdf_ = base_tsdf_;
    occupancy_f_ = base_occupancy_f_;
  } else {
    auto elev = std::make_shared<ElevationMap>(sc.elevation);
    for (int id : neighbors_) {
      const ParkingSlot & s = sc.slots[static_cast<std::size_t>(id)];
      stamp_box(
        *elev, OrientedRect{s.center(), s.heading, 0.5 * config_.neighbor.length, 0.5 * config_.neighbor.width},
        static_cast<float>(config_.neighbor.height));
    }
    const auto occ = occupancy_from_elevation(*elev, sc.h_occ);
    tsdf_ = std::make_shared<TsdfField>(
      tsdf_from_distance(euclidean_distance_transform(occ), config_.d0, config_.tau));
    occupancy_f_ = occupancy_as_double(occ);
    elevation_ = std::move(elev);
  }

  if (options.fixed_start) {
    if (!start_is_valid(*options.fixed_start)) {
      throw Error(ErrorCode::kSpawnFailure, "fixed start collides or leaves the bounds");
    }
    state_ = *options.fixed_start;
  } else {
    const double r0 = sc.spawn.r_min;
    const double r1 = sc.spawn.r_max;
    const double off = center_offset(config_.vehicle);
    bool found = false;
    for (int attempt = 0; attempt < kSpawnAttempts && !found; ++attempt) {
      // Area-uniform in the annulus for the footprint center.
      const double r = std::sqrt(rng.uniform(r0 * r0, r1 * r1));
      const double phi = rng.uniform(-kPi, kPi);
      const double psi = rng.uniform(-kPi, kPi);
      const Vec2 c = target.center() + Vec2{r * std::cos(phi), r * std::sin(phi)};
      const VehicleState s{c.x - off * std::cos(psi), c.y - off * std::sin(psi), psi};
      if (start_is_valid(s)) {
        state_ = s;
        found = true;
      }
    }
    if (!found) {
      throw Error(ErrorCode::kSpawnFailure, "no valid start pose after 100 attempts");
    }
  }

  perturbed_ = perturb_slot(target, rng, config_.perturb);

  last_action_ = {};
  last_sign_ = 0;
  gear_shifts_ = 0;
  sim_time_ = 0.0;
  ctx_ = EpisodeContext{};
  ctx_.max_steps = config_.max_steps;
  ctx_.prev_iou = iou(footprint(state_, config_.vehicle, FootprintLayer::kFull), target.rect());
  budget_ = config_.budget;
  status_ = EpisodeStatus::kRunning;
  started_ = true;

  const auto plan = query_expert();
  expert_hint_ = plan ? std::optional<Action>(plan->action) : std::nullopt;
  return observe();
}

StepResult Env::step(const Action & requested)
{
  if (!started_) {
    bad("step called before reset");
  }
  if (is_terminal(status_)) {
    throw Error(ErrorCode::kEpisodeTerminated, "episode already ended; call reset");
  }
  const VehicleParams & vp = config_.vehicle;
  const Action a = clamp_action(requested, vp);
  const auto traj = propagate(state_, a, vp.wheelbase, config_.dt, config_.n_samples);
  const auto sweep = collision_fraction(traj, vp, *elevation_, config_.thresholds);
  state_ = sweep.truncated.states.back();

  if (a.v != 0.0) {
    const int sign = a.v > 0.0 ? 1 : -1;
    if (last_sign_ != 0 && sign != last_sign_) {
      ++gear_shifts_;
    }
    last_sign_ = sign;
  }
  last_action_ = a;
  sim_time_ += config_.dt;

  const ParkingSlot & target = target_slot();
  const auto plan = query_expert();
  expert_hint_ = plan ? std::optional<Action>(plan->action) : std::nullopt;

  StepInputs in;
  in.collision_fraction = sweep.report.collision_fraction;
  in.success = check_success(state_, target, vp, config_.reward.success);
  in.out_of_bounds = out_of_bounds(state_);
  in.expert_available = plan.has_value();
  in.iou = iou(footprint(state_, vp, FootprintLayer::kFull), target.rect());
  in.soft_collision = soft_collision_reward(sweep.truncated, *tsdf_, vp);

  StepResult out;
  std::tie(out.reward, out.status) = step_reward(ctx_, in, config_.reward);
  status_ = out.status;
  out.action = a;
  out.state = state_;
  out.info.gear_shifts = gear_shifts_;
  out.info.sim_time = sim_time_;
  out.info.anchor_granted = ctx_.anchor_granted;
  out.info.expert_available = in.expert_available;
  out.info.expert_action = expert_hint_;
  out.info.collision_fraction = in.collision_fraction;
  out.info.collision_layer = sweep.report.layer;
  out.info.iou = in.iou;
  out.observation = observe();
  return out;
}

Observation Env::observe() const
{
  const ObsConfig & oc = config_.obs;
  const int n = oc.cells();
  const std::size_t plane = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  Observation obs;
  obs.size = n;
  obs.resolution = oc.resolution;
  obs.channels.assign(4 * plane, 0.0f);

  const double c = std::cos(state_.psi);
  const double s = std::sin(state_.psi);
  // occupancy_f_ and tsdf_ share the elevation raster.
  const GridMeta & meta = occupancy_f_->meta;
  const GateEval target(perturbed_, config_.gate);
  std::vector<GateEval> slots;
  for (const auto & slot : scenario_->slots) {
    slots.emplace_back(slot, config_.gate);
  }
  for (int row = 0; row < n; ++row) {
    const double ey = -oc.range + (row + 0.5) * oc.resolution;
    for (int col = 0; col < n; ++col) {
      const double ex = -oc.range + (col + 0.5) * oc.resolution;
      const Vec2 p{state_.x + c * ex - s * ey, state_.y + s * ex + c * ey};
      const std::size_t k = static_cast<std::size_t>(row) * n + col;
      const auto w = bilinear_weights(meta, p);
      if (!w) {
        obs.channels[k] = 1.0f;
        continue;
      }
      obs.channels[k] = static_cast<float>(w->apply(*occupancy_f_));
      obs.channels[plane + k] = static_cast<float>(w->apply(*tsdf_));
      obs.channels[2 * plane + k] = target(p);
      float m = 0.0f;
      for (const auto & g : slots) {
        m = std::max(m, g(p));
      }
      obs.channels[3 * plane + k] = m;
    }
  }

  const VehicleState goal = goal_pose_of_slot(perturbed_, config_.vehicle);
  const Vec2 d = goal.position() - state_.position();
  const double dpsi = normalize_angle(goal.psi - state_.psi);
  obs.scalars = {c * d.x + s * d.y, -s * d.x + c * d.y, std::sin(dpsi), std::cos(dpsi), last_action_.v,
                 last_action_.omega};
  return obs;
}

BevMaps Env::render_bev() const
{
  if (!started_) {
    bad("render called before reset");
  }
  const GridMeta & meta = elevation_->meta;
  BevMaps out;
  out.occupancy = *occupancy_f_;
  out.slot_map = Grid<double>(meta, 0.0);
  for (const auto & slot : scenario_->slots) {
    const auto h = target_heatmap(slot, meta, config_.gate);
    for (std::size_t i = 0; i < h.data.size(); ++i) {
      out.slot_map.data[i] = std::max(out.slot_map.data[i], h.data[i]);
    }
  }
  out.target_map = target_heatmap(perturbed_, meta, config_.gate, slot_id_);
  return out;
}

}  // namespace reap_sim
