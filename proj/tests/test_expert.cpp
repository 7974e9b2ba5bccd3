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

#include <random>

#include "reap_sim/expert.hpp"

namespace reap_sim
{
namespace
{

ElevationMap flat()
{
  GridMeta m;
  m.width = 481;
  m.height = 481;
  m.origin_x = -12.0;
  m.origin_y = -12.0;
  return ElevationMap(m, 0.0f);
}

template <typename Pred>
void raise(ElevationMap & e, float h, Pred pred)
{
  for (int iy = 0; iy < e.meta.height; ++iy) {
    for (int ix = 0; ix < e.meta.width; ++ix) {
      if (pred(e.meta.cell_center(ix, iy))) {
        e.at(ix, iy) = h;
      }
    }
  }
}

TEST(GoalPose, CentersFootprintInSlot)
{
  VehicleParams p;
  ParkingSlot slot{0.0, 0.0, 0.0};
  const auto g = goal_pose_of_slot(slot, p);
  EXPECT_NEAR(g.x, (p.rear_overhang - p.front_overhang - p.wheelbase) / 2, 1e-12);
  EXPECT_EQ(g.y, 0.0);
  EXPECT_EQ(g.psi, 0.0);
  const auto c = footprint(g, p, FootprintLayer::kFull).center;
  EXPECT_NEAR(c.x, 0.0, 1e-12);
  EXPECT_NEAR(c.y, 0.0, 1e-12);
}

TEST(GoalPose, MirroredSlotsMirror)
{
  VehicleParams p;
  const ParkingSlot a{1.5, 2.0, 0.4};
  const ParkingSlot b{1.5, -2.0, -0.4};
  const auto ga = goal_pose_of_slot(a, p);
  const auto gb = goal_pose_of_slot(b, p);
  EXPECT_NEAR(ga.x, gb.x, 1e-12);
  EXPECT_NEAR(ga.y, -gb.y, 1e-12);
  EXPECT_NEAR(ga.psi, -gb.psi, 1e-12);
}

TEST(GoalPose, ShortSlotOvershootsSymmetrically)
{
  VehicleParams p;
  ParkingSlot slot{3.0, -1.0, kPi / 2};
  slot.length = 4.3;
  slot.width = 2.1;
  const auto g = goal_pose_of_slot(slot, p);
  const auto fp = footprint(g, p, FootprintLayer::kFull);
  double lo = 1e9;
  double hi = -1e9;
  for (const auto & c : fp.corners()) {
    const double s = slot.rect().to_local(c).x;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  EXPECT_NEAR(-2.15 - lo, 0.2, 1e-9);
  EXPECT_NEAR(hi - 2.15, 0.2, 1e-9);
}

TEST(GoalPose, DegenerateSlot)
{
  ParkingSlot s;
  s.length = 0.0;
  EXPECT_THROW(goal_pose_of_slot(s, {}), Error);
}

TEST(RsCollisionFree, EmptyMapAndWall)
{
  VehicleParams p;
  auto e = flat();
  const auto path = rs_shortest_path({-5, 0, 0}, {3, 0, 0}, p.min_turning_radius());
  EXPECT_TRUE(rs_collision_free(path, {-5, 0, 0}, p, e, {}, 0.05));
  raise(e, 1.0f, [](const Vec2 & c) { return std::abs(c.x - 2.0) < 0.1; });
  EXPECT_FALSE(rs_collision_free(path, {-5, 0, 0}, p, e, {}, 0.05));
}

TEST(RsCollisionFree, AgreesWithDenseRecheck)
{
  VehicleParams p;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int blocked = 0;
  for (int t = 0; t < 60; ++t) {
    auto e = flat();
    for (int b = 0; b < 6; ++b) {
      const Vec2 c{6 * u(rng), 6 * u(rng)};
      const double r = 0.3 + 0.4 * std::abs(u(rng));
      raise(e, 1.0f, [&](const Vec2 & q) { return (q - c).norm() < r; });
    }
    const VehicleState a{5 * u(rng), 5 * u(rng), kPi * u(rng)};
    const VehicleState b{5 * u(rng), 5 * u(rng), kPi * u(rng)};
    const auto path = rs_shortest_path(a, b, p.min_turning_radius());
    const bool coarse = rs_collision_free(path, a, p, e, {}, 0.05);
    const bool dense = rs_collision_free(path, a, p, e, {}, 0.005);
    EXPECT_EQ(coarse, dense) << "trial " << t;
    blocked += !dense;
  }
  EXPECT_GT(blocked, 5);
}

TEST(Expert, AtGoalReturnsZeroAction)
{
  VehicleParams p;
  PlanningBudget budget;
  const ParkingSlot slot;
  const auto plan = expert_action(goal_pose_of_slot(slot, p), slot, flat(), p, {}, budget);
  ASSERT_TRUE(plan);
  EXPECT_EQ(plan->action.v, 0.0);
  EXPECT_EQ(plan->action.omega, 0.0);
  EXPECT_EQ(plan->path.total_length, 0.0);
}

TEST(Expert, TracksFirstSegment)
{
  VehicleParams p;
  PlanningBudget budget;
  const ParkingSlot slot;
  const auto g = goal_pose_of_slot(slot, p);
  // Straight ahead of the goal: pure reverse.
  auto plan = expert_action({g.x + 3.0, 0.0, 0.0}, slot, flat(), p, {}, budget);
  ASSERT_TRUE(plan);
  EXPECT_NEAR(plan->action.v, -1.5, 1e-12);
  EXPECT_EQ(plan->action.omega, 0.0);
  // Short remainder slows down to land on the goal.
  plan = expert_action({g.x + 0.4, 0.0, 0.0}, slot, flat(), p, {}, budget);
  ASSERT_TRUE(plan);
  EXPECT_NEAR(plan->action.v, -0.8, 1e-12);
}

TEST(Expert, MirrorSymmetry)
{
  VehicleParams p;
  const ParkingSlot slot;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const VehicleState s{6 * u(rng), 6 * u(rng), kPi * u(rng)};
    PlanningBudget b1;
    PlanningBudget b2;
    const auto a = expert_action(s, slot, flat(), p, {}, b1);
    const auto m = expert_action({s.x, -s.y, -s.psi}, slot, flat(), p, {}, b2);
    ASSERT_EQ(a.has_value(), m.has_value());
    if (a) {
      // Equal-length words may tie, so only the length is mirrored.
      EXPECT_NEAR(a->path.total_length, m->path.total_length, 1e-9);
    }
  }
}

TEST(Expert, WalledOffGoal)
{
  VehicleParams p;
  PlanningBudget budget;
  auto e = flat();
  raise(e, 1.5f, [](const Vec2 & c) {
    const double r = c.norm();
    return r > 4.0 && r < 4.3;
  });
  EXPECT_FALSE(expert_action({8.0, 0.0, 0.0}, ParkingSlot{}, e, p, {}, budget));
}

TEST(Expert, BudgetIsCharged)
{
  VehicleParams p;
  const ParkingSlot slot;
  PlanningBudget budget;
  const double before = budget.episode_remaining_s;
  ASSERT_TRUE(expert_action({6.0, 4.0, 1.0}, slot, flat(), p, {}, budget));
  EXPECT_LT(budget.episode_remaining_s, before);

  PlanningBudget tight;
  tight.per_query_s = 10 * tight.seconds_per_check;
  EXPECT_FALSE(expert_action({6.0, 4.0, 1.0}, slot, flat(), p, {}, tight));

  PlanningBudget drained;
  drained.episode_remaining_s = 0.0;
  EXPECT_FALSE(expert_action({6.0, 4.0, 1.0}, slot, flat(), p, {}, drained));
}

}  // namespace
}  // namespace reap_sim
