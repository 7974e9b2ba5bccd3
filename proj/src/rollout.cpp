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

#include "reap_sim/rollout.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace reap_sim
{

namespace
{

constexpr std::uint64_t kPolicyStream = 0x5851f42d4c957f2dULL;

std::string trace_name(std::uint64_t episode)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "episode_%05llu.jsonl", static_cast<unsigned long long>(episode));
  return buf;
}

}  // namespace

std::optional<PolicyKind> policy_from_string(std::string_view name)
{
  if (name == "rs-expert") {
    return PolicyKind::kRsExpert;
  }
  if (name == "random") {
    return PolicyKind::kRandom;
  }
  if (name == "remote") {
    return PolicyKind::kRemote;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> episode_seeds(std::uint64_t seed, int episodes)
{
  Rng rng(seed);
  std::vector<std::uint64_t> out;
  for (int i = 0; i < episodes; ++i) {
    out.push_back(rng.next_u64());
  }
  return out;
}

std::string run_episode(
  Env & env, std::uint64_t episode, std::uint64_t seed, const PolicyFn & policy, EpisodeSummary * summary)
{
  Observation obs = env.reset(seed);
  std::string trace;
  PolicyInput in;
  in.episode = episode;
  for (int k = 0;; ++k) {
    in.step = k;
    in.observation = &obs;
    in.state = env.state();
    in.expert_action = env.expert_hint();
    StepResult r = env.step(policy(in));
    obs = std::move(r.observation);
    r.observation = {};
    trace += trace_record(to_json(r), episode, k).dump();
    trace += '\n';
    if (is_terminal(r.status)) {
      if (summary) {
        *summary = {r.status, r.info.gear_shifts, r.info.sim_time, k + 1};
      }
      return trace;
    }
  }
}

RolloutResult rollout(
  std::shared_ptr<const Scenario> scenario, const EnvConfig & config, const RolloutOptions & options)
{
  if (options.episodes < 0) {
    throw Error(ErrorCode::kInvalidParameter, "episode count must be non-negative");
  }
  Env env(std::move(scenario), config);
  const VehicleParams & vp = config.vehicle;

  std::unique_ptr<Listener> listener;
  LineSocket actor;
  std::int64_t next_id = 1;
  if (options.policy == PolicyKind::kRemote) {
    listener = std::make_unique<Listener>(options.remote_port);
    if (options.on_listen) {
      options.on_listen(listener->port());
    }
    actor = listener->accept();
    if (!actor.is_open()) {
      throw std::runtime_error("no remote actor connected");
    }
  }

  Rng policy_rng;
  const PolicyFn policy = [&](const PolicyInput & in) -> Action {
    switch (options.policy) {
      case PolicyKind::kRsExpert:
        // No admissible plan: hold still and let the budget or the step
        // limit decide.
        return in.expert_action.value_or(Action{});
      case PolicyKind::kRandom:
        return {policy_rng.uniform(-vp.max_speed, vp.max_speed), policy_rng.uniform(-vp.max_steer, vp.max_steer)};
      case PolicyKind::kRemote: {
        const std::int64_t id = next_id++;
        const Json msg = {
          {"id", id},
          {"cmd", "act"},
          {"payload",
           {{"episode", in.episode},
            {"step", in.step},
            {"state", to_json(in.state)},
            {"expert_action", in.expert_action ? to_json(*in.expert_action) : Json(nullptr)},
            {"observation", to_json(*in.observation)}}}};
        std::string line;
        if (!actor.write_line(msg.dump()) || actor.read_line(line) != LineSocket::ReadStatus::kLine) {
          throw std::runtime_error("remote actor disconnected");
        }
        const Json resp = Json::parse(line);
        if (resp.value("id", Json(nullptr)) != Json(id) || !resp.value("ok", false)) {
          throw std::runtime_error("remote actor sent an invalid reply");
        }
        return action_from_json(resp.at("payload"));
      }
    }
    return {};
  };

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
  }

  RolloutResult result;
  int invalid = 0;
  const auto seeds = episode_seeds(options.seed, options.episodes);
  for (int i = 0; i < options.episodes; ++i) {
    const auto ep = static_cast<std::uint64_t>(i);
    policy_rng.seed(seeds[static_cast<std::size_t>(i)] ^ kPolicyStream);
    EpisodeSummary summary;
    std::string trace;
    try {
      trace = run_episode(env, ep, seeds[static_cast<std::size_t>(i)], policy, &summary);
    } catch (const Error & e) {
      if (e.code() != ErrorCode::kSpawnFailure) {
        throw;
      }
      ++invalid;
      continue;
    }
    if (!options.out_dir.empty()) {
      std::ofstream out(std::filesystem::path(options.out_dir) / trace_name(ep), std::ios::binary);
      out << trace;
    }
    result.episodes.push_back(summary);
    result.traces.push_back(std::move(trace));
  }
  result.report = aggregate(result.episodes, invalid);

  if (!options.out_dir.empty()) {
    std::ofstream out(std::filesystem::path(options.out_dir) / "report.json");
    out << to_json(result.report).dump(2) << '\n';
  }
  if (actor.is_open()) {
    actor.write_line(Json{{"id", next_id}, {"cmd", "done"}, {"payload", to_json(result.report)}}.dump());
  }
  return result;
}

Json serve_remote_policy(const std::string & host, std::uint16_t port, const PolicyFn & policy)
{
  LineSocket sock = connect_tcp(host, port);
  std::string line;
  while (sock.read_line(line) == LineSocket::ReadStatus::kLine) {
    const Json msg = Json::parse(line);
    const std::string cmd = msg.value("cmd", std::string{});
    if (cmd == "done") {
      return msg.value("payload", Json::object());
    }
    if (cmd != "act") {
      sock.write_line(error_response(msg.value("id", Json(nullptr)), "unknown-command", cmd).dump());
      continue;
    }
    const Json & p = msg.at("payload");
    const Observation obs = observation_from_json(p.at("observation"));
    PolicyInput in;
    in.episode = p.at("episode").get<std::uint64_t>();
    in.step = p.at("step").get<int>();
    in.observation = &obs;
    in.state = state_from_json(p.at("state"));
    if (!p.at("expert_action").is_null()) {
      in.expert_action = action_from_json(p.at("expert_action"));
    }
    sock.write_line(ok_response(msg.at("id"), to_json(policy(in))).dump());
  }
  throw std::runtime_error("rollout closed the connection before finishing");
}

}  // namespace reap_sim
