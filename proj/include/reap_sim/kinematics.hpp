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

#ifndef REAP_SIM__KINEMATICS_HPP_
#define REAP_SIM__KINEMATICS_HPP_

#include <vector>

#include "reap_sim/geometry.hpp"

namespace reap_sim
{

/// Body geometry and actuation limits. All lengths in meters.
struct VehicleParams
{
  double wheelbase{2.8};
  double width{1.9};
  double length{4.7};
  double rear_overhang{1.0};
  double front_overhang{0.9};
  double max_speed{1.5};
  double max_steer{0.52};
  double h_step{0.15};
  double h_over{0.35};

  /// Minimum turning radius of the rear-axle center.
  double min_turning_radius() const { return wheelbase / std::tan(max_steer); }

  /// Throws invalid-parameter when the geometry is inconsistent.
  void validate() const;

  bool operator==(const VehicleParams &) const = default;
};

/// Rear-axle center pose in the world frame.
struct VehicleState
{
  double x{0.0};
  double y{0.0};
  double psi{0.0};

  Vec2 position() const { return {x, y}; }
  bool operator==(const VehicleState &) const = default;
};

struct Action
{
  double v{0.0};
  double omega{0.0};
  bool operator==(const Action &) const = default;
};

Action clamp_action(const Action & a, const VehicleParams & params);

struct TrajectorySamples
{
  std::vector<VehicleState> states;
  // Arc length between consecutive samples (constant for a held action).
  double arc_step{0.0};

  double total_arc() const
  {
    return states.empty() ? 0.0 : arc_step * static_cast<double>(states.size() - 1);
  }
};

/// Pose reached after driving a signed arc length `s` with constant
/// curvature `kappa` (1/m) from `start`.
VehicleState advance_arc(const VehicleState & start, double s, double kappa);

/// Closed-form bicycle-model integration of a held action over `dt` seconds,
/// sampled at n + 1 uniformly spaced instants including the start.
TrajectorySamples propagate(
  const VehicleState & state, const Action & action, double wheelbase, double dt = 0.5,
  int n = 10);

enum class FootprintLayer { kFull, kCore };

/// Full: whole body. Core: between the axles, full width.
OrientedRect footprint(const VehicleState & state, const VehicleParams & params, FootprintLayer layer);

/// Perimeter samples spaced at most `spacing` apart, corners included,
/// counter-clockwise from the first corner.
std::vector<Vec2> boundary_points(const OrientedRect & rect, double spacing);

}  // namespace reap_sim

#endif  // REAP_SIM__KINEMATICS_HPP_
