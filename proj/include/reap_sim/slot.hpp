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

#ifndef REAP_SIM__SLOT_HPP_
#define REAP_SIM__SLOT_HPP_

#include "reap_sim/geometry.hpp"

namespace reap_sim
{

enum class SlotKind { kStandard, kMechanical };

/// A parkable rectangle. The slot axis points from the closed (back) end
/// toward the entry opening.
struct ParkingSlot
{
  double cx{0.0};
  double cy{0.0};
  double heading{0.0};
  double length{5.2};
  double width{2.5};
  SlotKind kind{SlotKind::kStandard};
  // Mechanical-slot structure, meters above ground.
  double panel_height{1.5};
  double ramp_rise{0.1};
  double barrier_height{0.25};

  Vec2 center() const { return {cx, cy}; }

  OrientedRect rect() const { return {{cx, cy}, heading, 0.5 * length, 0.5 * width}; }

  bool operator==(const ParkingSlot &) const = default;
};

inline void require_valid(const ParkingSlot & slot)
{
  if (!(slot.length > 0.0) || !(slot.width > 0.0)) {
    throw Error(ErrorCode::kDegenerateSlot, "slot length and width must be positive");
  }
}

}  // namespace reap_sim

#endif  // REAP_SIM__SLOT_HPP_
