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

#include "reap_sim/collision.hpp"

#include <limits>

namespace reap_sim
{

namespace
{
constexpr double kPatchLength = 0.3;
constexpr double kPatchWidth = 0.2;
constexpr double kLayerEps = 1e-9;

struct Contact
{
  double z_max{-std::numeric_limits<double>::infinity()};
  double z_min{std::numeric_limits<double>::infinity()};
};

Contact wheel_contact(const VehicleState & state, const VehicleParams & params, const ElevationMap & elev)
{
  Contact c;
  for (const auto & patch : wheel_patches(state, params)) {
    for_each_cell_in(elev.meta, patch, [&](int ix, int iy) {
      const double h = elev.at(ix, iy);
      c.z_max = std::max(c.z_max, h);
      c.z_min = std::min(c.z_min, h);
    });
  }
  if (c.z_max < c.z_min) {
    // Patches smaller than a cell: fall back to the cells under the centers.
    for (const auto & patch : wheel_patches(state, params)) {
      const auto cell = elev.meta.world_to_cell(patch.center);
      if (!cell) {
        throw Error(ErrorCode::kOutOfMap, "wheel patch outside map");
      }
      const double h = elev.at(cell->ix, cell->iy);
      c.z_max = std::max(c.z_max, h);
      c.z_min = std::min(c.z_min, h);
    }
  }
  return c;
}

}  // namespace

void CollisionThresholds::validate() const
{
  if (!(h_step >= 0.0) || !(h_step <= h_over)) {
    throw Error(ErrorCode::kInvalidParameter, "collision thresholds must satisfy 0 <= h_step <= h_over");
  }
}

const char * to_string(CollisionLayer layer)
{
  switch (layer) {
    case CollisionLayer::kNone:
      return "none";
    case CollisionLayer::kCore:
      return "core";
    case CollisionLayer::kOverhang:
      return "overhang";
  }
  return "none";
}

std::array<OrientedRect, 4> wheel_patches(const VehicleState & state, const VehicleParams & params)
{
  const double track = 0.5 * params.width - 0.5 * kPatchWidth;
  const Vec2 axis{std::cos(state.psi), std::sin(state.psi)};
  const Vec2 normal{-axis.y, axis.x};
  const Vec2 rear = state.position();
  const Vec2 front = rear + axis * params.wheelbase;
  const auto patch = [&](const Vec2 & c) {
    return OrientedRect{c, state.psi, 0.5 * kPatchLength, 0.5 * kPatchWidth};
  };
  return {
    patch(rear - normal * track), patch(rear + normal * track), patch(front - normal * track),
    patch(front + normal * track)};
}

double ground_reference(
  const VehicleState & state, const VehicleParams & params, const ElevationMap & elev)
{
  return wheel_contact(state, params, elev).z_max;
}

CollisionReport check_state(
  const VehicleState & state, const VehicleParams & params, const ElevationMap & elev,
  const CollisionThresholds & thresholds)
{
  const OrientedRect full = footprint(state, params, FootprintLayer::kFull);
  for (const auto & c : full.corners()) {
    if (!elev.meta.contains(c)) {
      throw Error(ErrorCode::kOutOfMap, "footprint outside map");
    }
  }
  const Contact contact = wheel_contact(state, params, elev);
  const double z_ref = contact.z_max;

  bool core = contact.z_max - contact.z_min > thresholds.h_step;
  bool overhang = false;

  const Vec2 axis{std::cos(state.psi), std::sin(state.psi)};
  const Vec2 rear = state.position();
  for_each_cell_in(elev.meta, full, [&](int ix, int iy) {
    const double rise = elev.at(ix, iy) - z_ref;
    if (rise <= thresholds.h_step) {
      return;
    }
    const double lx = (elev.meta.cell_center(ix, iy) - rear).dot(axis);
    const bool in_core = lx >= -kLayerEps && lx <= params.wheelbase + kLayerEps;
    if (in_core) {
      core = true;
    } else if (rise > thresholds.h_over) {
      overhang = true;
    }
  });

  CollisionReport report;
  if (core || overhang) {
    report.colliding = true;
    report.layer = core ? CollisionLayer::kCore : CollisionLayer::kOverhang;
    report.first_colliding_sample = 0;
    report.collision_fraction = 1.0;
  }
  return report;
}

SweepResult collision_fraction(
  const TrajectorySamples & traj, const VehicleParams & params, const ElevationMap & elev,
  const CollisionThresholds & thresholds)
{
  SweepResult out;
  out.truncated = traj;
  const int n = static_cast<int>(traj.states.size()) - 1;
  for (int i = 1; i <= n; ++i) {
    CollisionReport r;
    try {
      r = check_state(traj.states[i], params, elev, thresholds);
    } catch (const Error & e) {
      if (e.code() != ErrorCode::kOutOfMap) {
        throw;
      }
      r.colliding = true;
      r.layer = CollisionLayer::kCore;
    }
    if (r.colliding) {
      out.report.colliding = true;
      out.report.layer = r.layer;
      out.report.first_colliding_sample = i;
      // Samples are uniform in arc length for a held action.
      out.report.collision_fraction = 1.0 - static_cast<double>(i - 1) / n;
      out.truncated.states.resize(static_cast<std::size_t>(i));
      return out;
    }
  }
  return out;
}

}  // namespace reap_sim
