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

#include "reap_sim/kinematics.hpp"

#include <algorithm>

namespace reap_sim
{

namespace
{
constexpr double kStraightTan = 1e-9;
}

void VehicleParams::validate() const
{
  if (!(wheelbase > 0.0) || !(width > 0.0) || !(rear_overhang >= 0.0) || !(front_overhang >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "vehicle dimensions must be positive");
  }
  if (std::abs(length - (wheelbase + rear_overhang + front_overhang)) > 1e-9) {
    throw Error(
      ErrorCode::kInvalidParameter, "vehicle length must equal wheelbase plus both overhangs");
  }
  if (!(max_speed > 0.0) || !(max_steer > 0.0) || !(max_steer < 0.5 * kPi)) {
    throw Error(ErrorCode::kInvalidParameter, "vehicle speed and steering limits out of range");
  }
  if (!(h_step >= 0.0) || !(h_step <= h_over)) {
    throw Error(ErrorCode::kInvalidParameter, "vehicle clearances must satisfy 0 <= h_step <= h_over");
  }
}

Action clamp_action(const Action & a, const VehicleParams & params)
{
  return {
    std::clamp(a.v, -params.max_speed, params.max_speed),
    std::clamp(a.omega, -params.max_steer, params.max_steer)};
}

VehicleState advance_arc(const VehicleState & start, double s, double kappa)
{
  double lx = s;
  double ly = 0.0;
  double dpsi = 0.0;
  if (kappa != 0.0) {
    dpsi = s * kappa;
    const double half = std::sin(0.5 * dpsi);
    lx = std::sin(dpsi) / kappa;
    // 1 - cos(a) = 2 sin^2(a / 2), stable for small turns.
    ly = 2.0 * half * half / kappa;
  }
  const double c = std::cos(start.psi);
  const double sn = std::sin(start.psi);
  return {
    start.x + c * lx - sn * ly, start.y + sn * lx + c * ly, normalize_angle(start.psi + dpsi)};
}

TrajectorySamples propagate(
  const VehicleState & state, const Action & action, double wheelbase, double dt, int n)
{
  if (!(dt > 0.0) || n < 1) {
    throw Error(ErrorCode::kInvalidParameter, "propagate requires dt > 0 and n >= 1");
  }
  const double t = std::tan(action.omega);
  const double kappa = std::abs(t) < kStraightTan ? 0.0 : t / wheelbase;

  TrajectorySamples out;
  out.arc_step = std::abs(action.v) * dt / n;
  out.states.reserve(static_cast<std::size_t>(n) + 1);
  out.states.push_back(state);
  for (int k = 1; k <= n; ++k) {
    const double s = action.v * (dt * k / n);
    out.states.push_back(advance_arc(state, s, kappa));
  }
  return out;
}

OrientedRect footprint(const VehicleState & state, const VehicleParams & params, FootprintLayer layer)
{
  double rear = 0.0;
  double front = params.wheelbase;
  if (layer == FootprintLayer::kFull) {
    rear = -params.rear_overhang;
    front = params.wheelbase + params.front_overhang;
  }
  const double mid = 0.5 * (rear + front);
  const Vec2 offset = rotate({mid, 0.0}, state.psi);
  return {state.position() + offset, state.psi, 0.5 * (front - rear), 0.5 * params.width};
}

std::vector<Vec2> boundary_points(const OrientedRect & rect, double spacing)
{
  if (!(spacing > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "boundary spacing must be positive");
  }
  const auto corners = rect.corners();
  std::vector<Vec2> pts;
  for (std::size_t e = 0; e < 4; ++e) {
    const Vec2 a = corners[e];
    const Vec2 b = corners[(e + 1) % 4];
    const double len = (b - a).norm();
    const int k = std::max(1, static_cast<int>(std::ceil(len / spacing - 1e-12)));
    for (int j = 0; j < k; ++j) {
      pts.push_back(a + (b - a) * (static_cast<double>(j) / k));
    }
  }
  return pts;
}

}  // namespace reap_sim
