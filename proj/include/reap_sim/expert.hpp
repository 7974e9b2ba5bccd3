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

#ifndef REAP_SIM__EXPERT_HPP_
#define REAP_SIM__EXPERT_HPP_

#include <optional>

#include "reap_sim/collision.hpp"
#include "reap_sim/reeds_shepp.hpp"
#include "reap_sim/slot.hpp"

namespace reap_sim
{

/// Planning-time accounting for the rule-based expert.
///
/// Time is charged on a virtual clock: every pose validated against the map
/// costs `seconds_per_check`. This keeps budgets meaningful while leaving
/// episodes bit-reproducible across machines.
struct PlanningBudget
{
  double per_query_s{0.05};
  double episode_remaining_s{5.0};
  double seconds_per_check{2e-5};
};

struct ExpertQuery
{
  VehicleState start;
  VehicleState goal;
  double time_budget{0.05};
};

/// Rear-axle pose that centers the full footprint in the slot, facing the
/// entry opening (reverse-in parking). Slots shorter than the vehicle get a
/// symmetric overshoot at both ends.
VehicleState goal_pose_of_slot(const ParkingSlot & slot, const VehicleParams & params);

/// True iff every pose sampled along the path (spacing <= step) passes
/// check_state. Poses whose footprint leaves the map count as blocked.
bool rs_collision_free(
  const RsPath & path, const VehicleState & start, const VehicleParams & params,
  const ElevationMap & elev, const CollisionThresholds & thresholds, double step);

struct ExpertPlan
{
  Action action;
  RsPath path;
};

/// One step of the Reeds-Shepp expert: plans to the slot's goal pose and, if
/// the plan is collision-free within budget, returns the held action that
/// tracks the first segment for the next `dt` seconds. nullopt means no
/// admissible plan (or budget exhausted).
std::optional<ExpertPlan> expert_action(
  const VehicleState & state, const ParkingSlot & slot, const ElevationMap & elev,
  const VehicleParams & params, const CollisionThresholds & thresholds, PlanningBudget & budget,
  double dt = 0.5, double check_step = 0.05);

}  // namespace reap_sim

#endif  // REAP_SIM__EXPERT_HPP_
