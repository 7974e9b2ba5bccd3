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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reap_sim/kinematics.hpp"

namespace reap_sim
{
namespace
{

TEST(Propagate, StraightLine)
{
  const auto t = propagate({0, 0, 0}, {1.0, 0.0}, 2.8, 0.5, 10);
  ASSERT_EQ(t.states.size(), 11u);
  EXPECT_NEAR(t.states.back().x, 0.5, 1e-15);
  EXPECT_EQ(t.states.back().y, 0.0);
  EXPECT_NEAR(t.arc_step, 0.05, 1e-15);
}

TEST(Propagate, ZeroSpeedStaysPut)
{
  const VehicleState s{1.0, -2.0, 0.7};
  const auto t = propagate(s, {0.0, 0.4}, 2.8);
  for (const auto & q : t.states) {
    EXPECT_EQ(q, s);
  }
}

TEST(Propagate, KnownArc)
{
  const double omega = std::atan(0.28);
  const auto end = propagate({0, 0, 0}, {2.0, omega}, 2.8, 0.5, 10).states.back();
  EXPECT_NEAR(end.psi, 0.1, 1e-12);
  EXPECT_NEAR(end.x, 0.99833, 1e-5);
  EXPECT_NEAR(end.y, 0.04996, 1e-5);
  const auto ref = oracle::rk4({0, 0, 0}, {2.0, omega}, 2.8, 0.5, 2000);
  EXPECT_NEAR(end.x, ref.x, 1e-9);
  EXPECT_NEAR(end.y, ref.y, 1e-9);
}

TEST(Propagate, RejectsBadParameters)
{
  EXPECT_THROW(propagate({}, {1, 0}, 2.8, 0.0, 10), Error);
  EXPECT_THROW(propagate({}, {1, 0}, 2.8, 0.5, 0), Error);
}

TEST(Propagate, MatchesRungeKutta)
{
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const VehicleState s{5 * u(rng), 5 * u(rng), kPi * u(rng)};
    const Action a{1.5 * u(rng), 0.52 * u(rng)};
    const double dt = 0.5 * (u(rng) + 1.0) + 1e-3;
    const auto end = propagate(s, a, 2.8, dt, 10).states.back();
    const auto ref = oracle::rk4(s, a, 2.8, dt, 400);
    ASSERT_LT(std::hypot(end.x - ref.x, end.y - ref.y), 1e-6);
    ASSERT_NEAR(normalize_angle(end.psi - ref.psi), 0.0, 1e-9);
  }
}

TEST(Propagate, GroupPropertyAndReversibility)
{
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const VehicleState s{3 * u(rng), 3 * u(rng), kPi * u(rng)};
    const Action a{1.5 * u(rng), 0.52 * u(rng)};
    const auto once = propagate(s, a, 2.8, 0.4, 4).states.back();
    const auto twice = propagate(once, a, 2.8, 0.4, 4).states.back();
    const auto joint = propagate(s, a, 2.8, 0.8, 8).states.back();
    EXPECT_NEAR(twice.x, joint.x, 1e-9);
    EXPECT_NEAR(twice.y, joint.y, 1e-9);
    EXPECT_NEAR(normalize_angle(twice.psi - joint.psi), 0.0, 1e-9);
    const auto back = propagate(once, {-a.v, a.omega}, 2.8, 0.4, 4).states.back();
    EXPECT_NEAR(back.x, s.x, 1e-9);
    EXPECT_NEAR(back.y, s.y, 1e-9);
    EXPECT_NEAR(normalize_angle(back.psi - s.psi), 0.0, 1e-9);
  }
}

TEST(Propagate, CurvatureBound)
{
  VehicleParams p;
  const double kmax = std::tan(p.max_steer) / p.wheelbase;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Action a = clamp_action({3 * u(rng), 2 * u(rng)}, p);
    const auto t = propagate({0, 0, u(rng)}, a, p.wheelbase);
    for (std::size_t k = 1; k < t.states.size(); ++k) {
      const double dpsi = std::abs(normalize_angle(t.states[k].psi - t.states[k - 1].psi));
      EXPECT_LE(dpsi, kmax * t.arc_step + 1e-12);
    }
  }
}

TEST(Clamp, Bounds)
{
  VehicleParams p;
  const auto a = clamp_action({9.0, -2.0}, p);
  EXPECT_EQ(a.v, 1.5);
  EXPECT_EQ(a.omega, -0.52);
}

TEST(Params, Validate)
{
  VehicleParams p;
  EXPECT_NO_THROW(p.validate());
  p.length = 5.0;
  EXPECT_THROW(p.validate(), Error);
  p = VehicleParams{};
  p.h_step = 0.5;
  EXPECT_THROW(p.validate(), Error);
}

TEST(Footprint, IdentityPose)
{
  VehicleParams p;
  const auto full = footprint({0, 0, 0}, p, FootprintLayer::kFull).corners();
  EXPECT_NEAR(full[0].x, -1.0, 1e-12);
  EXPECT_NEAR(full[0].y, -0.95, 1e-12);
  EXPECT_NEAR(full[2].x, 3.7, 1e-12);
  EXPECT_NEAR(full[2].y, 0.95, 1e-12);
  const auto core = footprint({0, 0, 0}, p, FootprintLayer::kCore).corners();
  EXPECT_NEAR(core[0].x, 0.0, 1e-12);
  EXPECT_NEAR(core[2].x, 2.8, 1e-12);
}

TEST(Footprint, RotationSymmetry)
{
  VehicleParams p;
  const auto a = footprint({0, 0, 0}, p, FootprintLayer::kFull).corners();
  const auto b = footprint({0, 0, kPi / 2}, p, FootprintLayer::kFull).corners();
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(b[i].x, -a[i].y, 1e-12);
    EXPECT_NEAR(b[i].y, a[i].x, 1e-12);
  }
}

TEST(Boundary, UnitSquare)
{
  const auto pts = boundary_points({{0, 0}, 0.0, 0.5, 0.5}, 0.5);
  EXPECT_EQ(pts.size(), 8u);
  EXPECT_THROW(boundary_points({{0, 0}, 0.0, 0.5, 0.5}, 0.0), Error);
}

TEST(Boundary, PointsOnPerimeterWithBoundedGaps)
{
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    const OrientedRect r{{u(rng), -u(rng)}, u(rng), u(rng), u(rng)};
    const double spacing = 0.05 + 0.3 * u(rng) / 3.0;
    const auto pts = boundary_points(r, spacing);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Vec2 l = r.to_local(pts[k]);
      const double edge = std::min(std::abs(std::abs(l.x) - r.half_length), std::abs(std::abs(l.y) - r.half_width));
      EXPECT_LT(edge, 1e-9);
      EXPECT_LE(std::abs(l.x), r.half_length + 1e-9);
      EXPECT_LE(std::abs(l.y), r.half_width + 1e-9);
      const Vec2 next = pts[(k + 1) % pts.size()];
      EXPECT_LE((next - pts[k]).norm(), spacing + 1e-9);
    }
  }
}

}  // namespace
}  // namespace reap_sim
