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

#ifndef REAP_SIM__GEOMETRY_HPP_
#define REAP_SIM__GEOMETRY_HPP_

#include <array>
#include <span>
#include <vector>

#include "reap_sim/common.hpp"

namespace reap_sim
{

using Polygon = std::vector<Vec2>;

/// Rectangle with arbitrary heading. Corners are counter-clockwise starting
/// at the rear-right corner (local (-half_length, -half_width)).
struct OrientedRect
{
  Vec2 center;
  double heading{0.0};
  double half_length{0.0};
  double half_width{0.0};

  Vec2 axis() const { return {std::cos(heading), std::sin(heading)}; }
  Vec2 normal() const { return {-std::sin(heading), std::cos(heading)}; }

  std::array<Vec2, 4> corners() const
  {
    const Vec2 a = axis() * half_length;
    const Vec2 n = normal() * half_width;
    return {center - a - n, center + a - n, center + a + n, center - a + n};
  }

  /// Coordinates of a world point in the rectangle frame.
  Vec2 to_local(const Vec2 & p) const
  {
    const Vec2 d = p - center;
    return {d.dot(axis()), d.dot(normal())};
  }

  bool contains(const Vec2 & p, double eps = 0.0) const
  {
    const Vec2 l = to_local(p);
    return std::abs(l.x) <= half_length + eps && std::abs(l.y) <= half_width + eps;
  }

  double area() const { return 4.0 * half_length * half_width; }
};

/// Signed shoelace area; positive for counter-clockwise vertex order.
double polygon_area(std::span<const Vec2> poly);

/// Intersection of two convex counter-clockwise polygons (Sutherland-Hodgman).
Polygon clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clip);

/// Axis-aligned bounds of a point set, as {min, max}.
std::array<Vec2, 2> bounding_box(std::span<const Vec2> pts);

}  // namespace reap_sim

#endif  // REAP_SIM__GEOMETRY_HPP_
