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

#include "reap_sim/reward.hpp"

#include <algorithm>
#include <limits>

namespace reap_sim
{

void RewardConfig::validate() const
{
  if (!(r_succ > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "r_succ must be positive");
  }
  if (k_pc > 0.0 || r_timeout > 0.0 || r_bound > 0.0) {
    throw Error(ErrorCode::kInvalidParameter, "penalty terms must be non-positive");
  }
  if (!(success.lateral >= 0.0) || !(success.longitudinal >= 0.0) || !(success.heading >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "success thresholds must be non-negative");
  }
}

const char * to_string(EpisodeStatus status)
{
  switch (status) {
    case EpisodeStatus::kRunning:
      return "running";
    case EpisodeStatus::kSuccess:
      return "success";
    case EpisodeStatus::kCollision:
      return "collision";
    case EpisodeStatus::kTimeout:
      return "timeout";
    case EpisodeStatus::kOutOfBounds:
      return "out_of_bounds";
  }
  return "running";
}

std::optional<EpisodeStatus> status_from_string(std::string_view name)
{
  for (auto s :
       {EpisodeStatus::kRunning, EpisodeStatus::kSuccess, EpisodeStatus::kCollision,
        EpisodeStatus::kTimeout, EpisodeStatus::kOutOfBounds}) {
    if (name == to_string(s)) {
      return s;
    }
  }
  return std::nullopt;
}

double iou(const OrientedRect & a, const OrientedRect & b)
{
  if (!(a.half_length > 0.0) || !(a.half_width > 0.0) || !(b.half_length > 0.0) || !(b.half_width > 0.0)) {
    throw Error(ErrorCode::kDegenerateRect, "iou requires rectangles with positive area");
  }
  const auto ca = a.corners();
  const auto cb = b.corners();
  const double inter = std::max(0.0, polygon_area(clip_convex(ca, cb)));
  const double uni = a.area() + b.area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double soft_collision_reward(
  const TrajectorySamples & traj, const Grid<double> & tsdf, const VehicleParams & params,
  std::optional<double> spacing)
{
  const double step = spacing.value_or(tsdf.meta.resolution);
  const auto min_clearance = [&](const VehicleState & s) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto & p : boundary_points(footprint(s, params, FootprintLayer::kFull), step)) {
      m = std::min(m, sample_bilinear(tsdf, p));
    }
    return m;
  };
  if (traj.states.empty()) {
    return 0.0;
  }
  const double start = min_clearance(traj.states.front());
  double worst = start;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    worst = std::min(worst, min_clearance(traj.states[i]));
  }
  return worst - start;
}

Vec2 slot_offsets(const VehicleState & state, const ParkingSlot & slot, const VehicleParams & params)
{
  const Vec2 c = footprint(state, params, FootprintLayer::kFull).center;
  const Vec2 local = slot.rect().to_local(c);
  return {local.x, local.y};
}

bool check_success(
  const VehicleState & state, const ParkingSlot & slot, const VehicleParams & params,
  const SuccessThresholds & thresholds)
{
  const Vec2 off = slot_offsets(state, slot, params);
  double dpsi = std::abs(normalize_angle(state.psi - slot.heading));
  if (thresholds.heading_symmetric) {
    dpsi = std::min(dpsi, kPi - dpsi);
  }
  return std::abs(off.y) <= thresholds.lateral && std::abs(off.x) <= thresholds.longitudinal &&
         dpsi <= thresholds.heading;
}

std::pair<RewardBreakdown, EpisodeStatus> step_reward(
  EpisodeContext & ctx, const StepInputs & in, const RewardConfig & cfg)
{
  ++ctx.step_count;

  EpisodeStatus status = EpisodeStatus::kRunning;
  if (in.collision_fraction > 0.0) {
    status = EpisodeStatus::kCollision;
  } else if (in.success) {
    status = EpisodeStatus::kSuccess;
  } else if (in.out_of_bounds) {
    status = EpisodeStatus::kOutOfBounds;
  } else if (ctx.step_count >= ctx.max_steps) {
    status = EpisodeStatus::kTimeout;
  }

  RewardBreakdown r;
  if (in.collision_fraction > 0.0) {
    r.pc = cfg.k_pc * in.collision_fraction;
  }
  if (status == EpisodeStatus::kSuccess) {
    r.succ = cfg.r_succ;
  }
  if (!ctx.anchor_granted && (in.expert_available || status == EpisodeStatus::kSuccess)) {
    // Successful episodes that never met an anchor are compensated here.
    r.anchor = cfg.r_anchor;
    ctx.anchor_granted = true;
  }
  if (status == EpisodeStatus::kTimeout) {
    r.timeout = cfg.r_timeout;
  }
  if (status == EpisodeStatus::kOutOfBounds) {
    r.bound = cfg.r_bound;
  }
  r.iou = cfg.w_iou * (in.iou - ctx.prev_iou);
  ctx.prev_iou = in.iou;
  r.sc = cfg.w_sc * in.soft_collision;
  r.total = r.sum_of_terms();
  return {r, status};
}

}  // namespace reap_sim
