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

#ifndef REAP_SIM__REEDS_SHEPP_HPP_
#define REAP_SIM__REEDS_SHEPP_HPP_

#include <vector>

#include "reap_sim/kinematics.hpp"

namespace reap_sim
{

enum class SegmentKind { kLeft, kStraight, kRight };

const char * to_string(SegmentKind kind);

struct RsSegment
{
  SegmentKind kind{SegmentKind::kStraight};
  // Meters; negative means driving in reverse.
  double signed_length{0.0};

  bool operator==(const RsSegment &) const = default;
};

struct RsPath
{
  std::vector<RsSegment> segments;
  double total_length{0.0};
  double r_min{1.0};

  double curvature(SegmentKind kind) const
  {
    switch (kind) {
      case SegmentKind::kLeft:
        return 1.0 / r_min;
      case SegmentKind::kRight:
        return -1.0 / r_min;
      case SegmentKind::kStraight:
        break;
    }
    return 0.0;
  }
};

/// Shortest forward/reverse path with turning radius r_min over all
/// Reeds-Shepp word families (CSC, CCC, CCCC, CCSC, CCSCC and their
/// time-flipped, reflected and reversed variants). Zero-length segments are
/// dropped and adjacent same-kind, same-direction segments merged.
RsPath rs_shortest_path(const VehicleState & start, const VehicleState & goal, double r_min);

/// Pose reached by driving the whole path from start.
VehicleState rs_endpoint(const RsPath & path, const VehicleState & start);

/// Poses along the path, start included, spaced at most `step` in arc length.
std::vector<VehicleState> rs_sample(const RsPath & path, const VehicleState & start, double step);

}  // namespace reap_sim

#endif  // REAP_SIM__REEDS_SHEPP_HPP_
