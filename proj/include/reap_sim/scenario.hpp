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

#ifndef REAP_SIM__SCENARIO_HPP_
#define REAP_SIM__SCENARIO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "reap_sim/grid_maps.hpp"
#include "reap_sim/slot.hpp"

namespace reap_sim
{

struct Bounds
{
  double x0{0.0};
  double y0{0.0};
  double x1{0.0};
  double y1{0.0};

  bool contains(const Vec2 & p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  bool operator==(const Bounds &) const = default;
};

/// Start poses are drawn in an annulus around the target slot center.
struct SpawnParams
{
  double r_min{3.0};
  double r_max{8.0};
  bool operator==(const SpawnParams &) const = default;
};

struct Scenario
{
  std::string name;
  ElevationMap elevation;
  // Cells above this height are obstacles in the 2D occupancy layer.
  double h_occ{0.3};
  std::vector<ParkingSlot> slots;
  Bounds bounds;
  SpawnParams spawn;

  // Derived on load.
  OccupancyGrid occupancy;
  TsdfField tsdf;

  /// Recomputes the occupancy layer and the default TSDF (d0 = 1 m, tau = 0.5).
  void derive();

  /// Throws validation-error naming the first violated invariant.
  void validate() const;
};

/// Parses and validates a scenario document. parse-error messages carry the
/// byte offset reported by the JSON reader.
Scenario load_scenario(std::string_view bytes);
Scenario load_scenario_file(const std::string & path);

std::string save_scenario(const Scenario & scenario);

/// Raises every cell whose center lies in rect to at least `height`.
void stamp_box(ElevationMap & elev, const OrientedRect & rect, float height);

/// Adds the mechanical-slot structure around a slot: raised platform with an
/// entry ramp, side panels, a low rear barrier and a back wall.
void stamp_mechanical_structure(ElevationMap & elev, const ParkingSlot & slot);

namespace presets
{

/// Single standard slot on an empty floor.
Scenario open_standard();
/// Single narrow mechanical slot (2.1 m x 4.3 m) with panels, ramp and barrier.
Scenario mechanical();
/// Row of six standard slots against a back wall.
Scenario garage();
/// The open slot with pillars scattered around the approach.
Scenario cluttered(std::uint64_t seed = 7);

std::vector<std::string> names();
/// Throws invalid-parameter for unknown names.
Scenario by_name(const std::string & name);

}  // namespace presets

}  // namespace reap_sim

#endif  // REAP_SIM__SCENARIO_HPP_
