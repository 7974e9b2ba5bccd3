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

#include <sstream>

#include "reap_sim/metrics.hpp"

namespace reap_sim
{
namespace
{

std::string record(const char * status, double v, double t)
{
  return Json{{"status", status}, {"action", {{"v", v}, {"omega", 0.0}}}, {"info", {{"sim_time", t}}}}.dump() +
         "\n";
}

TEST(GearShifts, SignChangesIgnoringZeros)
{
  EXPECT_EQ(count_gear_shifts({1.0, 1.0, -1.0, 1.0}), 2);
  EXPECT_EQ(count_gear_shifts({1.0, 0.0, 1.0}), 0);
  EXPECT_EQ(count_gear_shifts({-1.0, 0.0, 1.0}), 1);
  EXPECT_EQ(count_gear_shifts({}), 0);
}

TEST(Aggregate, SevenTwoOne)
{
  std::vector<EpisodeSummary> eps;
  for (int i = 0; i < 7; ++i) {
    eps.push_back({EpisodeStatus::kSuccess, 2, 10.0 + i, 20});
  }
  eps.push_back({EpisodeStatus::kCollision, 1, 3.0, 6});
  eps.push_back({EpisodeStatus::kCollision, 0, 3.0, 6});
  eps.push_back({EpisodeStatus::kTimeout, 4, 120.0, 240});
  const auto m = aggregate(eps);
  EXPECT_DOUBLE_EQ(m.psr, 70.0);
  EXPECT_DOUBLE_EQ(m.pcr, 20.0);
  EXPECT_DOUBLE_EQ(m.ptr, 10.0);
  EXPECT_DOUBLE_EQ(m.pbr, 0.0);
  EXPECT_DOUBLE_EQ(m.psr + m.pcr + m.ptr + m.pbr, 100.0);
  EXPECT_DOUBLE_EQ(m.ngs, 1.9);
  ASSERT_TRUE(m.apt);
  EXPECT_DOUBLE_EQ(*m.apt, 13.0);
}

TEST(Aggregate, NoSuccessMeansNullApt)
{
  const auto m = aggregate({{EpisodeStatus::kTimeout, 0, 120.0, 240}});
  EXPECT_FALSE(m.apt);
  EXPECT_TRUE(to_json(m)["APT"].is_null());
  EXPECT_EQ(aggregate({}).episodes, 0);
}

TEST(Trace, SummarizesEpisodes)
{
  std::istringstream in(
    record("running", 1.0, 0.5) + record("running", 1.0, 1.0) + record("running", -1.0, 1.5) +
    record("success", 1.0, 2.0) + "\n" + record("collision", -0.5, 0.5));
  const auto eps = summarize_trace(in, "t.jsonl");
  ASSERT_EQ(eps.size(), 2u);
  EXPECT_EQ(eps[0].status, EpisodeStatus::kSuccess);
  EXPECT_EQ(eps[0].gear_shifts, 2);
  EXPECT_EQ(eps[0].steps, 4);
  EXPECT_EQ(eps[0].sim_time, 2.0);
  EXPECT_EQ(eps[1].status, EpisodeStatus::kCollision);
}

TEST(Trace, MalformedInputsNameTheLine)
{
  const auto expect_fail = [](const std::string & text, const std::string & where) {
    std::istringstream in(text);
    try {
      summarize_trace(in, "x.jsonl");
      FAIL() << text;
    } catch (const Error & e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedTrace);
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  expect_fail(record("running", 1.0, 0.5) + "{not json\n", "x.jsonl:2:");
  expect_fail(record("parked", 1.0, 0.5), "x.jsonl:1:");
  expect_fail("{\"status\": \"running\"}\n", "action.v");
  expect_fail(record("running", 1.0, 0.5), "unfinished");
}

TEST(Metrics, MissingFile)
{
  EXPECT_THROW(compute_metrics({"/nonexistent/trace.jsonl"}), Error);
}

}  // namespace
}  // namespace reap_sim
