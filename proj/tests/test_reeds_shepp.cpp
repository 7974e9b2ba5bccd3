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
#include "reap_sim/reeds_shepp.hpp"

namespace reap_sim
{
namespace
{

double pose_error(const VehicleState & a, const VehicleState & b)
{
  return std::max(std::hypot(a.x - b.x, a.y - b.y), std::abs(normalize_angle(a.psi - b.psi)));
}

TEST(ReedsShepp, StartEqualsGoal)
{
  const VehicleState s{1.0, 2.0, 0.3};
  const auto p = rs_shortest_path(s, s, 1.0);
  EXPECT_TRUE(p.segments.empty());
  EXPECT_EQ(p.total_length, 0.0);
}

TEST(ReedsShepp, StraightAheadAndBehind)
{
  auto p = rs_shortest_path({0, 0, 0}, {5, 0, 0}, 1.0);
  ASSERT_EQ(p.segments.size(), 1u);
  EXPECT_EQ(p.segments[0].kind, SegmentKind::kStraight);
  EXPECT_NEAR(p.segments[0].signed_length, 5.0, 1e-12);
  p = rs_shortest_path({0, 0, 0}, {-2, 0, 0}, 4.9);
  ASSERT_EQ(p.segments.size(), 1u);
  EXPECT_NEAR(p.segments[0].signed_length, -2.0, 1e-12);
}

TEST(ReedsShepp, QuarterTurn)
{
  const auto p = rs_shortest_path({0, 0, 0}, {2, 2, kPi / 2}, 2.0);
  ASSERT_EQ(p.segments.size(), 1u);
  EXPECT_EQ(p.segments[0].kind, SegmentKind::kLeft);
  EXPECT_NEAR(p.total_length, kPi, 1e-9);
}

TEST(ReedsShepp, RejectsBadRadius)
{
  EXPECT_THROW(rs_shortest_path({}, {1, 0, 0}, 0.0), Error);
}

TEST(ReedsShepp, EndpointSymmetryAndLowerBound)
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 3000; ++i) {
    const VehicleState a{6 * u(rng), 6 * u(rng), kPi * u(rng)};
    const VehicleState b{6 * u(rng), 6 * u(rng), kPi * u(rng)};
    const double r = 0.5 + 4.0 * (u(rng) + 1.0) / 2.0;
    const auto ab = rs_shortest_path(a, b, r);
    const auto ba = rs_shortest_path(b, a, r);
    ASSERT_LT(pose_error(rs_endpoint(ab, a), b), 1e-6) << i;
    ASSERT_NEAR(ab.total_length, ba.total_length, 1e-9) << i;
    ASSERT_GE(ab.total_length, std::hypot(a.x - b.x, a.y - b.y) - 1e-9);
    double sum = 0.0;
    for (const auto & s : ab.segments) {
      sum += std::abs(s.signed_length);
    }
    ASSERT_NEAR(sum, ab.total_length, 1e-12);
  }
}

TEST(ReedsShepp, ScalesWithRadius)
{
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const VehicleState g{3 * u(rng), 3 * u(rng), kPi * u(rng)};
    const auto p1 = rs_shortest_path({}, g, 1.0);
    const auto p3 = rs_shortest_path({}, {3 * g.x, 3 * g.y, g.psi}, 3.0);
    EXPECT_NEAR(p3.total_length, 3 * p1.total_length, 1e-8);
  }
}

TEST(ReedsShepp, NoLongerThanLatticeSearch)
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto prims = oracle::primitives();
  for (int i = 0; i < 150; ++i) {
    const VehicleState start{2 * u(rng), 2 * u(rng), kPi * u(rng)};
    VehicleState goal = start;
    double walked = 0.0;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < k; ++j) {
      const auto & p = prims[rng() % prims.size()];
      goal = oracle::apply(goal, p);
      walked += p.length();
    }
    const double lattice = oracle::lattice_length(start, goal, walked);
    ASSERT_LE(lattice, walked + 1e-9);
    const auto rs = rs_shortest_path(start, goal, 1.0);
    EXPECT_LE(rs.total_length, lattice + 1e-9) << i;
  }
}

TEST(ReedsShepp, SamplesRespectStep)
{
  const auto p = rs_shortest_path({0, 0, 0}, {-1.0, 3.0, 2.0}, 1.0);
  const auto s = rs_sample(p, {0, 0, 0}, 0.05);
  EXPECT_EQ(s.front(), (VehicleState{0, 0, 0}));
  EXPECT_LT(pose_error(s.back(), {-1.0, 3.0, 2.0}), 1e-6);
  for (std::size_t i = 1; i < s.size(); ++i) {
    EXPECT_LE(std::hypot(s[i].x - s[i - 1].x, s[i].y - s[i - 1].y), 0.05 + 1e-12);
  }
  EXPECT_THROW(rs_sample(p, {}, 0.0), Error);
}

}  // namespace
}  // namespace reap_sim
