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

#ifndef REAP_SIM__COLLISION_HPP_
#define REAP_SIM__COLLISION_HPP_

#include <array>
#include <algorithm>
#include <optional>

#include "reap_sim/grid_maps.hpp"
#include "reap_sim/kinematics.hpp"

namespace reap_sim
{

/// Height clearances relative to the ground reference. The core layer (between
/// the axles) tolerates rises up to h_step; the overhangs clear obstacles up
/// to h_over. Setting both to zero reduces the model to plain 2D checking.
struct CollisionThresholds
{
  double h_step{0.15};
  double h_over{0.35};

  static CollisionThresholds from(const VehicleParams & p) { return {p.h_step, p.h_over}; }
  void validate() const;
  bool operator==(const CollisionThresholds &) const = default;
};

enum class CollisionLayer { kNone, kCore, kOverhang };

const char * to_string(CollisionLayer layer);

struct CollisionReport
{
  bool colliding{false};
  CollisionLayer layer{CollisionLayer::kNone};
  std::optional<int> first_colliding_sample;
  double collision_fraction{0.0};
};

/// Wheel contact patches: 0.3 m x 0.2 m, centered on the axles 0.1 m inside
/// each side of the body.
std::array<OrientedRect, 4> wheel_patches(const VehicleState & state, const VehicleParams & params);

/// Calls fn(ix, iy) for every cell whose center lies inside rect (edges
/// included). Throws out-of-map if any corner of rect leaves the raster.
template <typename Fn>
void for_each_cell_in(const GridMeta & meta, const OrientedRect & rect, Fn && fn)
{
  const auto corners = rect.corners();
  for (const auto & c : corners) {
    if (!meta.contains(c)) {
      throw Error(ErrorCode::kOutOfMap, "footprint leaves the map");
    }
  }
  const auto [lo, hi] = bounding_box(corners);
  constexpr double eps = 1e-9;
  const int ix0 = std::max(0, static_cast<int>(std::ceil((lo.x - meta.origin_x) / meta.resolution - eps)));
  const int iy0 = std::max(0, static_cast<int>(std::ceil((lo.y - meta.origin_y) / meta.resolution - eps)));
  const int ix1 =
    std::min(meta.width - 1, static_cast<int>(std::floor((hi.x - meta.origin_x) / meta.resolution + eps)));
  const int iy1 =
    std::min(meta.height - 1, static_cast<int>(std::floor((hi.y - meta.origin_y) / meta.resolution + eps)));
  const Vec2 ax = rect.axis();
  const Vec2 nm = rect.normal();
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      const Vec2 d = meta.cell_center(ix, iy) - rect.center;
      if (
        std::abs(d.dot(ax)) <= rect.half_length + eps &&
        std::abs(d.dot(nm)) <= rect.half_width + eps) {
        fn(ix, iy);
      }
    }
  }
}

/// Highest elevation under any wheel patch.
double ground_reference(
  const VehicleState & state, const VehicleParams & params, const ElevationMap & elev);

/// Dual-layer check of one pose. Core collides when a cell between the axles
/// rises more than h_step above the reference, or when the wheel patches
/// straddle a step taller than h_step. Overhang collides when a cell under
/// the overhangs rises more than h_over above the reference.
/// Throws kOutOfMap when the full footprint is not inside the raster.
CollisionReport check_state(
  const VehicleState & state, const VehicleParams & params, const ElevationMap & elev,
  const CollisionThresholds & thresholds);

struct SweepResult
{
  CollisionReport report;
  TrajectorySamples truncated;
};

/// Checks s1..sn (s0 is taken as free) and reports the fraction of arc
/// length lost to the first collision. The truncated trajectory stops at the
/// last free sample. Samples whose footprint leaves the raster count as
/// core-layer collisions.
SweepResult collision_fraction(
  const TrajectorySamples & traj, const VehicleParams & params, const ElevationMap & elev,
  const CollisionThresholds & thresholds);

}  // namespace reap_sim

#endif  // REAP_SIM__COLLISION_HPP_
