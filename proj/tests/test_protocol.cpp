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

#include <future>
#include <random>
#include <thread>

#include "reap_sim/codec.hpp"
#include "support.hpp"

namespace reap_sim
{
namespace
{

class ProtocolTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    server_ = std::make_unique<Server>(support::desk_config(), std::make_shared<ScenarioCatalog>());
    port_ = server_->start(0);
  }
  void TearDown() override { server_->stop(); }

  std::unique_ptr<Server> server_;
  std::uint16_t port_{0};
};

TEST(SessionTest, HandlesBadInputWithoutThrowing)
{
  ServerContext ctx;
  ctx.catalog = std::make_shared<ScenarioCatalog>();
  Session s(ctx);
  auto r = Json::parse(s.handle_line("{oops"));
  EXPECT_FALSE(r["ok"]);
  EXPECT_TRUE(r["id"].is_null());
  EXPECT_EQ(r["error"]["code"], "parse-error");
  r = Json::parse(s.handle_line(R"({"id": 4, "cmd": "fly"})"));
  EXPECT_EQ(r["id"], 4);
  EXPECT_EQ(r["error"]["code"], "unknown-command");
  r = Json::parse(s.handle_line(R"({"id": 5, "cmd": "step", "payload": {"env_id": 77, "action": {"v": 0, "omega": 0}}})"));
  EXPECT_EQ(r["error"]["code"], "no-such-env");
  r = Json::parse(s.handle_line(R"({"id": 6, "payload": {}})"));
  EXPECT_EQ(r["error"]["code"], "invalid-request");
  r = Json::parse(s.handle_line(R"({"id": 7, "cmd": "make", "payload": {"scenario": "nowhere"}})"));
  EXPECT_FALSE(r["ok"]);
  r = Json::parse(s.handle_line(R"({"id": 8, "cmd": "make", "payload": {"scenario": "open_standard", "config": {"warp": 9}}})"));
  EXPECT_EQ(r["error"]["code"], "parse-error");
  EXPECT_EQ(s.env_count(), 0u);
}

TEST_F(ProtocolTest, SpecDescribesTheEnvironment)
{
  Client c("127.0.0.1", port_);
  const auto spec = c.call("spec");
  EXPECT_EQ(spec["observation"]["shape"], Json::array({4, 64, 64}));
  EXPECT_EQ(spec["observation"]["channels"].size(), 4u);
  EXPECT_EQ(spec["action"]["high"][0], 1.5);
}

TEST_F(ProtocolTest, MakeResetStepRenderClose)
{
  Client c("127.0.0.1", port_);
  const auto id = c.call("make", {{"scenario", "open_standard"}, {"seed", 3}})["env_id"].get<std::uint64_t>();
  const auto r = c.call("reset", {{"env_id", id}, {"seed", 11}});
  EXPECT_EQ(r["seed"], 11);
  EXPECT_EQ(r["slot_id"], 0);
  const auto obs = observation_from_json(r["observation"]);
  EXPECT_EQ(obs.size, 64);
  EXPECT_EQ(obs.channels.size(), 4u * 64 * 64);
  const auto step = c.call("step", {{"env_id", id}, {"action", {{"v", 0.0}, {"omega", 0.0}}}});
  EXPECT_EQ(step["status"], "running");
  EXPECT_EQ(step["info"]["sim_time"], 0.5);
  const auto bev = c.call("render", {{"env_id", id}});
  EXPECT_TRUE(bev.contains("occupancy"));
  EXPECT_TRUE(bev.contains("target_map"));
  c.call("close", {{"env_id", id}});
  try {
    c.call("step", {{"env_id", id}, {"action", {{"v", 0.0}, {"omega", 0.0}}}});
    FAIL();
  } catch (const RemoteError & e) {
    EXPECT_EQ(e.code(), "no-such-env");
  }
}

TEST_F(ProtocolTest, FixedStartAndSpawnFailure)
{
  Client c("127.0.0.1", port_);
  const auto id = c.call("make", {{"scenario", "open_standard"}})["env_id"];
  const Json start = {{"x", 4.0}, {"y", 3.0}, {"psi", 0.5}};
  const auto r = c.call("reset", {{"env_id", id}, {"seed", 1}, {"options", {{"fixed_start", start}}}});
  EXPECT_EQ(r["state"], start);
  const auto bad = c.request(
    "reset", {{"env_id", id}, {"options", {{"fixed_start", {{"x", 40.0}, {"y", 0.0}, {"psi", 0.0}}}}}});
  EXPECT_FALSE(bad["ok"]);
  EXPECT_EQ(bad["error"]["code"], "spawn-failure");
}

TEST_F(ProtocolTest, MalformedLineKeepsConnectionOpen)
{
  Client c("127.0.0.1", port_);
  ASSERT_TRUE(c.send_raw("this is not json"));
  const auto r = Json::parse(c.read_raw());
  EXPECT_FALSE(r["ok"]);
  EXPECT_EQ(r["error"]["code"], "parse-error");
  EXPECT_TRUE(c.call("spec").is_object());
}

TEST_F(ProtocolTest, SteppingFinishedEpisode)
{
  Client c("127.0.0.1", port_);
  const auto id = c.call("make", {{"scenario", "open_standard"}})["env_id"];
  support::wire_episode(c, id, 0, 5, support::expert_or_wait);
  const auto r = c.request("step", {{"env_id", id}, {"action", {{"v", 0.0}, {"omega", 0.0}}}});
  EXPECT_EQ(r["error"]["code"], "episode-terminated");
}

TEST_F(ProtocolTest, EnvIdsArePerConnection)
{
  Client a("127.0.0.1", port_);
  Client b("127.0.0.1", port_);
  const auto id = a.call("make", {{"scenario", "open_standard"}})["env_id"];
  const auto r = b.request("reset", {{"env_id", id}});
  EXPECT_EQ(r["error"]["code"], "no-such-env");
}

TEST_F(ProtocolTest, WireTracesMatchInProcess)
{
  const auto cfg = support::desk_config();
  Env env(ScenarioCatalog().get("open_standard"), cfg);
  Client c("127.0.0.1", port_);
  const auto id = c.call("make", {{"scenario", "open_standard"}})["env_id"].get<std::uint64_t>();
  const auto seeds = episode_seeds(42, 3);
  for (std::size_t e = 0; e < seeds.size(); ++e) {
    EXPECT_EQ(
      support::wire_episode(c, id, e, seeds[e], support::expert_or_wait),
      run_episode(env, e, seeds[e], support::expert_or_wait))
      << e;
  }
}

TEST_F(ProtocolTest, ConcurrentSessionsFuzz)
{
  std::vector<std::thread> threads;
  std::atomic<int> failures{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(100 + t);
      Client c("127.0.0.1", port_);
      const auto id = c.call("make", {{"scenario", "open_standard"}})["env_id"];
      c.call("reset", {{"env_id", id}, {"seed", t}});
      for (int k = 0; k < 40; ++k) {
        Json resp;
        switch (rng() % 4) {
          case 0:
            resp = c.request("step", {{"env_id", id}, {"action", {{"v", 0.1}, {"omega", 0.0}}}});
            break;
          case 1:
            resp = c.request("step", {{"env_id", id}, {"action", "fast"}});
            break;
          case 2:
            c.send_raw(std::string(1 + rng() % 50, '{'));
            resp = Json::parse(c.read_raw());
            break;
          default:
            resp = c.request("reset", {{"env_id", id}, {"seed", rng() % 1000}});
            break;
        }
        if (!resp.is_object() || !resp.contains("ok")) {
          ++failures;
        }
      }
    });
  }
  for (auto & th : threads) {
    th.join();
  }
  EXPECT_EQ(failures, 0);
}

TEST(RemotePolicy, MatchesInProcessExpert)
{
  const auto sc = ScenarioCatalog().get("open_standard");
  const auto cfg = support::desk_config();
  RolloutOptions local;
  local.episodes = 3;
  local.seed = 9;
  const auto a = rollout(sc, cfg, local);

  RolloutOptions remote = local;
  remote.policy = PolicyKind::kRemote;
  std::promise<std::uint16_t> port;
  remote.on_listen = [&](std::uint16_t p) { port.set_value(p); };
  std::thread actor([&] {
    const auto p = port.get_future().get();
    serve_remote_policy("127.0.0.1", p, [](const PolicyInput & in) {
      EXPECT_NE(in.observation, nullptr);
      return in.expert_action.value_or(Action{});
    });
  });
  const auto b = rollout(sc, cfg, remote);
  actor.join();
  EXPECT_EQ(a.traces, b.traces);
  EXPECT_EQ(to_json(a.report), to_json(b.report));
}

}  // namespace
}  // namespace reap_sim
