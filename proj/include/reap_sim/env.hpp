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

#ifndef REAP_SIM__ENV_HPP_
#define REAP_SIM__ENV_HPP_

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "reap_sim/collision.hpp"
#include "reap_sim/expert.hpp"
#include "reap_sim/reward.hpp"
#include "reap_sim/scenario.hpp"

namespace reap_sim
{

struct ObsConfig
{
  double resolution{0.05};
  // Crops cover [-range, range]^2 in the ego frame.
  double range{10.0};

  int cells() const { return static_cast<int>(std::lround(2.0 * range / resolution)); }
  bool operator==(const ObsConfig &) const = default;
};

/// Parked neighbor vehicles are stamped as boxes into free adjacent slots.
struct NeighborBox
{
  double length{4.6};
  double width{1.8};
  double height{1.5};
  bool operator==(const NeighborBox &) const = default;
};

struct EnvConfig
{
  VehicleParams vehicle;
  CollisionThresholds thresholds;
  RewardConfig reward;
  double dt{0.5};
  int n_samples{10};
  int max_steps{240};
  ObsConfig obs;
  PerturbLimits perturb;
  GateParams gate;
  double d0{1.0};
  double tau{0.5};
  int max_neighbors{3};
  NeighborBox neighbor;
  PlanningBudget budget;
  double rs_check_step{0.05};

  /// Throws invalid-parameter on the first inconsistent field.
  void validate() const;
  bool operator==(const EnvConfig &) const = default;
};

inline constexpr std::array<const char *, 4> kObsChannels{"occupancy", "tsdf", "target", "slot_map"};
inline constexpr std::array<const char *, 6> kObsScalars{"dx", "dy", "sin_dpsi", "cos_dpsi", "v", "omega"};

/// Ego-centric crops, channel-major, each size x size with the ego x axis
/// along columns and the ego y axis along rows (row 0 at -range).
struct Observation
{
  int size{0};
  double resolution{0.0};
  std::vector<float> channels;
  std::array<double, 6> scalars{};

  const float * channel(int c) const { return channels.data() + static_cast<std::size_t>(c) * size * size; }
  bool operator==(const Observation &) const = default;
};

struct StepInfo
{
  int gear_shifts{0};
  double sim_time{0.0};
  bool anchor_granted{false};
  bool expert_available{false};
  std::optional<Action> expert_action;
  double collision_fraction{0.0};
  CollisionLayer collision_layer{CollisionLayer::kNone};
  double iou{0.0};
};

struct StepResult
{
  Observation observation;
  Action action;  // as executed, after clamping
  VehicleState state;
  RewardBreakdown reward;
  EpisodeStatus status{EpisodeStatus::kRunning};
  StepInfo info;
};

struct ResetOptions
{
  std::optional<int> slot_id;
  std::optional<VehicleState> fixed_start;
};

struct BevMaps
{
  Grid<double> occupancy;
  Grid<double> slot_map;
  TargetHeatmap target_map;
};

/// One episode runner over a shared immutable scenario. Not thread-safe;
/// separate instances may run concurrently.
class Env
{
public:
  Env(std::shared_ptr<const Scenario> scenario, EnvConfig config);

  /// Deterministic in seed. Throws spawn-failure after 100 rejected starts or
  /// when a fixed start collides or leaves the bounds.
  Observation reset(std::uint64_t seed, const ResetOptions & options = {});

  /// Throws episode-terminated after a terminal status, invalid-parameter
  /// before the first reset.
  StepResult step(const Action & action);

  BevMaps render_bev() const;

  const EnvConfig & config() const { return config_; }
  const Scenario & scenario() const { return *scenario_; }
  const VehicleState & state() const { return state_; }
  const ElevationMap & elevation() const { return *elevation_; }
  const ParkingSlot & target_slot() const;
  const ParkingSlot & perturbed_target() const { return perturbed_; }
  int target_slot_id() const { return slot_id_; }
  const std::vector<int> & neighbor_slots() const { return neighbors_; }
  EpisodeStatus status() const { return status_; }
  /// Expert plan at the current state (computed on reset and after each step).
  const std::optional<Action> & expert_hint() const { return expert_hint_; }
  bool started() const { return started_; }

  Observation observe() const;

private:
  bool start_is_valid(const VehicleState & s) const;
  bool out_of_bounds(const VehicleState & s) const;
  std::optional<ExpertPlan> query_expert();

  std::shared_ptr<const Scenario> scenario_;
  EnvConfig config_;

  // Per-episode world; shares the scenario rasters when nothing is stamped.
  std::shared_ptr<const ElevationMap> elevation_;
  std::shared_ptr<const TsdfField> tsdf_;
  std::shared_ptr<const Grid<double>> occupancy_f_;
  std::shared_ptr<const TsdfField> base_tsdf_;
  std::shared_ptr<const Grid<double>> base_occupancy_f_;

  int slot_id_{-1};
  ParkingSlot perturbed_;
  std::vector<int> neighbors_;
  VehicleState state_;
  Action last_action_;
  int last_sign_{0};
  int gear_shifts_{0};
  double sim_time_{0.0};
  EpisodeContext ctx_;
  PlanningBudget budget_;
  EpisodeStatus status_{EpisodeStatus::kRunning};
  std::optional<Action> expert_hint_;
  bool started_{false};
};

}  // namespace reap_sim

#endif  // REAP_SIM__ENV_HPP_
