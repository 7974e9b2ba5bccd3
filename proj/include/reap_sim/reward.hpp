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

#ifndef REAP_SIM__REWARD_HPP_
#define REAP_SIM__REWARD_HPP_

#include <optional>
#include <string_view>
#include <utility>

#include "reap_sim/grid_maps.hpp"
#include "reap_sim/kinematics.hpp"
#include "reap_sim/slot.hpp"

namespace reap_sim
{

struct SuccessThresholds
{
  double lateral{0.10};
  double longitudinal{0.5};
  double heading{0.05};
  // Accept the vehicle facing either way along the slot axis.
  bool heading_symmetric{false};

  bool operator==(const SuccessThresholds &) const = default;
};

/// Reward magnitudes. k_pc multiplies the colliding arc fraction.
struct RewardConfig
{
  double r_succ{10.0};
  double k_pc{-5.0};
  double r_anchor{2.0};
  double r_timeout{-2.0};
  double r_bound{-5.0};
  double w_iou{5.0};
  double w_sc{1.0};
  SuccessThresholds success;

  void validate() const;
  bool operator==(const RewardConfig &) const = default;
};

struct RewardBreakdown
{
  double succ{0.0};
  double pc{0.0};
  double anchor{0.0};
  double timeout{0.0};
  double bound{0.0};
  double iou{0.0};
  double sc{0.0};
  double total{0.0};

  double sum_of_terms() const { return succ + pc + anchor + timeout + bound + iou + sc; }
};

enum class EpisodeStatus { kRunning, kSuccess, kCollision, kTimeout, kOutOfBounds };

const char * to_string(EpisodeStatus status);
std::optional<EpisodeStatus> status_from_string(std::string_view name);

inline bool is_terminal(EpisodeStatus s) { return s != EpisodeStatus::kRunning; }

/// Area of intersection over area of union via convex clipping.
double iou(const OrientedRect & a, const OrientedRect & b);

/// Worst boundary clearance over the trajectory minus the clearance at the
/// start pose, both read from the TSDF by bilinear sampling. Boundary points
/// are taken on the full footprint at `spacing` (the grid resolution when
/// nullopt).
double soft_collision_reward(
  const TrajectorySamples & traj, const Grid<double> & tsdf, const VehicleParams & params,
  std::optional<double> spacing = std::nullopt);

/// Offsets of the full-footprint center from the slot center in the slot
/// frame: {longitudinal, lateral}.
Vec2 slot_offsets(const VehicleState & state, const ParkingSlot & slot, const VehicleParams & params);

/// Closed thresholds on lateral, longitudinal and heading error against the
/// goal heading (the slot axis).
bool check_success(
  const VehicleState & state, const ParkingSlot & slot, const VehicleParams & params,
  const SuccessThresholds & thresholds);

/// Per-episode bookkeeping owned by the episode runner.
struct EpisodeContext
{
  bool anchor_granted{false};
  double prev_iou{0.0};
  int step_count{0};
  int max_steps{240};
};

/// Geometry-derived facts about the step just executed.
struct StepInputs
{
  double collision_fraction{0.0};
  bool success{false};
  bool out_of_bounds{false};
  bool expert_available{false};
  double iou{0.0};
  double soft_collision{0.0};
};

/// Advances ctx by one step and classifies it. Terminal precedence within a
/// step: Collision, Success, OutOfBounds, Timeout.
std::pair<RewardBreakdown, EpisodeStatus> step_reward(
  EpisodeContext & ctx, const StepInputs & in, const RewardConfig & cfg);

}  // namespace reap_sim

#endif  // REAP_SIM__REWARD_HPP_
