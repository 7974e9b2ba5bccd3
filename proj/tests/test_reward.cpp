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
#include "reap_sim/reward.hpp"

namespace reap_sim
{
namespace
{

TEST(Iou, IdenticalAndDisjoint)
{
  const OrientedRect a{{1, 2}, 0.3, 2.0, 1.0};
  EXPECT_NEAR(iou(a, a), 1.0, 1e-12);
  EXPECT_EQ(iou(a, {{10, 2}, 0.3, 2.0, 1.0}), 0.0);
  EXPECT_THROW(iou(a, {{0, 0}, 0.0, 0.0, 1.0}), Error);
}

TEST(Iou, HalfShift)
{
  const OrientedRect a{{0, 0}, 0.0, 1.0, 1.0};
  const OrientedRect b{{1, 0}, 0.0, 1.0, 1.0};
  EXPECT_NEAR(iou(a, b), 1.0 / 3.0, 1e-12);
}

TEST(Iou, MatchesMonteCarlo)
{
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const OrientedRect a{{u(rng), u(rng)}, 6 * u(rng), 0.3 + u(rng), 0.3 + u(rng)};
    const OrientedRect b{{u(rng), u(rng)}, 6 * u(rng), 0.3 + u(rng), 0.3 + u(rng)};
    // Sample the bounding box of both.
    double x0 = 1e9, y0 = 1e9, x1 = -1e9, y1 = -1e9;
    for (const auto & r : {a, b}) {
      for (const auto & c : r.corners()) {
        x0 = std::min(x0, c.x);
        y0 = std::min(y0, c.y);
        x1 = std::max(x1, c.x);
        y1 = std::max(y1, c.y);
      }
    }
    int inter = 0;
    int uni = 0;
    for (int k = 0; k < 100000; ++k) {
      const Vec2 p{x0 + (x1 - x0) * u(rng), y0 + (y1 - y0) * u(rng)};
      const Vec2 la = a.to_local(p);
      const Vec2 lb = b.to_local(p);
      const bool ia = std::abs(la.x) <= a.half_length && std::abs(la.y) <= a.half_width;
      const bool ib = std::abs(lb.x) <= b.half_length && std::abs(lb.y) <= b.half_width;
      inter += ia && ib;
      uni += ia || ib;
    }
    EXPECT_NEAR(iou(a, b), static_cast<double>(inter) / uni, 0.01) << "pair " << t;
  }
}

// TSDF that falls off linearly along x; bilinear sampling reproduces it
// exactly, so the boundary minimum sits on the front bumper.
Grid<double> ramp_field()
{
  GridMeta m;
  m.width = 201;
  m.height = 121;
  m.origin_x = -4.0;
  m.origin_y = -3.0;
  Grid<double> g(m, 0.0);
  for (int iy = 0; iy < m.height; ++iy) {
    for (int ix = 0; ix < m.width; ++ix) {
      g.at(ix, iy) = 0.6 - 0.1 * m.cell_center(ix, iy).x;
    }
  }
  return g;
}

TrajectorySamples line(double x0, double x1, int n = 10)
{
  TrajectorySamples t;
  t.arc_step = (x1 - x0) / n;
  for (int i = 0; i <= n; ++i) {
    t.states.push_back({x0 + i * t.arc_step, 0.0, 0.0});
  }
  return t;
}

TEST(SoftCollision, ConstructedDip)
{
  VehicleParams p;
  const auto g = ramp_field();
  // Bumper goes from x = 1.0 (field 0.5) to x = 3.0 (field 0.3).
  const auto traj = line(-2.7, -0.7);
  EXPECT_NEAR(soft_collision_reward(traj, g, p), -0.2, 1e-9);
  // Backing away only raises clearance.
  const auto back = line(-0.7, -2.7);
  EXPECT_NEAR(soft_collision_reward(back, g, p), 0.0, 1e-12);
}

TEST(SoftCollision, StationaryAndFarAway)
{
  VehicleParams p;
  GridMeta m;
  m.width = 200;
  m.height = 200;
  m.origin_x = -5.0;
  m.origin_y = -5.0;
  const Grid<double> ones(m, 1.0);
  EXPECT_EQ(soft_collision_reward(line(-1.0, 0.0), ones, p), 0.0);
  const auto g = ramp_field();
  EXPECT_EQ(soft_collision_reward(line(-1.0, -1.0), g, p), 0.0);
  EXPECT_EQ(soft_collision_reward({}, g, p), 0.0);
}

TEST(Success, Boundaries)
{
  VehicleParams p;
  const ParkingSlot slot{2.0, 1.0, 0.7};
  const SuccessThresholds th;
  const auto g = goal_pose_of_slot(slot, p);
  EXPECT_TRUE(check_success(g, slot, p, th));

  const Vec2 ax{std::cos(0.7), std::sin(0.7)};
  const Vec2 nm{-ax.y, ax.x};
  const auto shifted = [&](double lon, double lat, double dpsi) {
    // Move the footprint center, then rotate about it.
    const Vec2 c = slot.center() + ax * lon + nm * lat;
    const double psi = slot.heading + dpsi;
    const double off = 0.5 * (p.wheelbase + p.front_overhang - p.rear_overhang);
    return VehicleState{c.x - off * std::cos(psi), c.y - off * std::sin(psi), psi};
  };
  EXPECT_FALSE(check_success(shifted(0.0, 0.2, 0.0), slot, p, th));
  EXPECT_TRUE(check_success(shifted(0.5 - 1e-12, 0.1 - 1e-12, 0.05 - 1e-12), slot, p, th));
  EXPECT_FALSE(check_success(shifted(0.0, 0.0, kPi), slot, p, th));
  SuccessThresholds sym = th;
  sym.heading_symmetric = true;
  EXPECT_TRUE(check_success(shifted(0.0, 0.0, kPi), slot, p, sym));
}

TEST(StepReward, QuietStep)
{
  EpisodeContext ctx;
  ctx.anchor_granted = true;
  ctx.prev_iou = 0.3;
  StepInputs in;
  in.iou = 0.3;
  const auto [r, s] = step_reward(ctx, in, {});
  EXPECT_EQ(s, EpisodeStatus::kRunning);
  EXPECT_EQ(r.total, 0.0);
  EXPECT_EQ(ctx.step_count, 1);
}

TEST(StepReward, PartialCollision)
{
  EpisodeContext ctx;
  StepInputs in;
  in.collision_fraction = 0.8;
  const auto [r, s] = step_reward(ctx, in, {});
  EXPECT_EQ(s, EpisodeStatus::kCollision);
  EXPECT_DOUBLE_EQ(r.pc, -4.0);
}

TEST(StepReward, SuccessCompensatesAnchor)
{
  EpisodeContext ctx;
  StepInputs in;
  in.success = true;
  const auto [r, s] = step_reward(ctx, in, {});
  EXPECT_EQ(s, EpisodeStatus::kSuccess);
  EXPECT_EQ(r.succ, 10.0);
  EXPECT_EQ(r.anchor, 2.0);

  EpisodeContext met;
  met.anchor_granted = true;
  const auto [r2, s2] = step_reward(met, in, {});
  EXPECT_EQ(r2.anchor, 0.0);
  EXPECT_EQ(s2, EpisodeStatus::kSuccess);
}

TEST(StepReward, Precedence)
{
  StepInputs all;
  all.collision_fraction = 0.1;
  all.success = true;
  all.out_of_bounds = true;
  EpisodeContext ctx;
  ctx.step_count = 239;
  EXPECT_EQ(step_reward(ctx, all, {}).second, EpisodeStatus::kCollision);
  all.collision_fraction = 0.0;
  ctx.step_count = 239;
  EXPECT_EQ(step_reward(ctx, all, {}).second, EpisodeStatus::kSuccess);
  all.success = false;
  ctx.step_count = 239;
  EXPECT_EQ(step_reward(ctx, all, {}).second, EpisodeStatus::kOutOfBounds);
  all.out_of_bounds = false;
  ctx.step_count = 239;
  const auto [r, s] = step_reward(ctx, all, {});
  EXPECT_EQ(s, EpisodeStatus::kTimeout);
  EXPECT_EQ(r.timeout, -2.0);
}

TEST(StepReward, FuzzedInvariants)
{
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const RewardConfig cfg;
  for (int e = 0; e < 300; ++e) {
    EpisodeContext ctx;
    ctx.prev_iou = u(rng);
    const double first = ctx.prev_iou;
    double iou_sum = 0.0;
    int anchors = 0;
    double last = first;
    for (;;) {
      StepInputs in;
      in.collision_fraction = u(rng) < 0.01 ? u(rng) : 0.0;
      in.success = u(rng) < 0.01;
      in.out_of_bounds = u(rng) < 0.005;
      in.expert_available = u(rng) < 0.3;
      in.iou = u(rng);
      in.soft_collision = -u(rng);
      const auto [r, s] = step_reward(ctx, in, cfg);
      EXPECT_EQ(r.total, r.sum_of_terms());
      EXPECT_GE(r.sc, -1.0);
      EXPECT_LE(r.sc, 1.0);
      anchors += r.anchor != 0.0;
      iou_sum += r.iou;
      last = in.iou;
      if (is_terminal(s)) {
        break;
      }
    }
    EXPECT_LE(anchors, 1);
    EXPECT_NEAR(iou_sum, cfg.w_iou * (last - first), 1e-12);
  }
}

TEST(Status, StringRoundTrip)
{
  for (auto s :
       {EpisodeStatus::kRunning, EpisodeStatus::kSuccess, EpisodeStatus::kCollision,
        EpisodeStatus::kTimeout, EpisodeStatus::kOutOfBounds}) {
    EXPECT_EQ(status_from_string(to_string(s)), s);
  }
  EXPECT_FALSE(status_from_string("crashed"));
}

TEST(RewardConfig, Validate)
{
  RewardConfig c;
  EXPECT_NO_THROW(c.validate());
  c.k_pc = 1.0;
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace reap_sim
