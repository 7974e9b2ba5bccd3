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

#include "reap_sim/expert.hpp"

#include <algorithm>

namespace reap_sim
{

namespace
{

// Returns false on the first blocked pose or when the charge callback
// refuses another check.
template <typename Charge>
bool validate_path(
  const RsPath & path, const VehicleState & start, const VehicleParams & params,
  const ElevationMap & elev, const CollisionThresholds & thresholds, double step, Charge && charge)
{
  if (!(step > 0.0) || step > 0.1 + 1e-12) {
    throw Error(ErrorCode::kInvalidParameter, "path validation step must lie in (0, 0.1]");
  }
  for (const auto & pose : rs_sample(path, start, step)) {
    if (!charge()) {
      return false;
    }
    try {
      if (check_state(pose, params, elev, thresholds).colliding) {
        return false;
      }
    } catch (const Error & e) {
      if (e.code() == ErrorCode::kOutOfMap) {
        return false;
      }
      throw;
    }
  }
  return true;
}

}  // namespace

VehicleState goal_pose_of_slot(const ParkingSlot & slot, const VehicleParams & params)
{
  require_valid(slot);
  // Distance from the rear axle forward to the footprint center.
  const double center_offset = 0.5 * (params.wheelbase + params.front_overhang - params.rear_overhang);
  const Vec2 axis{std::cos(slot.heading), std::sin(slot.heading)};
  const Vec2 rear = slot.center() - axis * center_offset;
  return {rear.x, rear.y, normalize_angle(slot.heading)};
}

bool rs_collision_free(
  const RsPath & path, const VehicleState & start, const VehicleParams & params,
  const ElevationMap & elev, const CollisionThresholds & thresholds, double step)
{
  return validate_path(path, start, params, elev, thresholds, step, [] { return true; });
}

std::optional<ExpertPlan> expert_action(
  const VehicleState & state, const ParkingSlot & slot, const ElevationMap & elev,
  const VehicleParams & params, const CollisionThresholds & thresholds, PlanningBudget & budget,
  double dt, double check_step)
{
  const VehicleState goal = goal_pose_of_slot(slot, params);
  RsPath path = rs_shortest_path(state, goal, params.min_turning_radius());

  double spent = 0.0;
  const auto charge = [&] {
    if (spent + budget.seconds_per_check > budget.per_query_s + 1e-15) {
      return false;
    }
    if (budget.episode_remaining_s < budget.seconds_per_check) {
      return false;
    }
    spent += budget.seconds_per_check;
    budget.episode_remaining_s -= budget.seconds_per_check;
    return true;
  };
  if (!validate_path(path, state, params, elev, thresholds, check_step, charge)) {
    return std::nullopt;
  }

  ExpertPlan plan;
  if (!path.segments.empty()) {
    const RsSegment & first = path.segments.front();
    const double remaining = std::abs(first.signed_length);
    const double speed = std::min(params.max_speed, remaining / dt);
    plan.action.v = first.signed_length > 0.0 ? speed : -speed;
    switch (first.kind) {
      case SegmentKind::kLeft:
        plan.action.omega = params.max_steer;
        break;
      case SegmentKind::kRight:
        plan.action.omega = -params.max_steer;
        break;
      case SegmentKind::kStraight:
        plan.action.omega = 0.0;
        break;
    }
  }
  plan.path = std::move(path);
  return plan;
}

}  // namespace reap_sim
