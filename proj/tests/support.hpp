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

// Shared fixtures for the protocol tests and the acceptance runner.

#ifndef REAP_SIM_TESTS__SUPPORT_HPP_
#define REAP_SIM_TESTS__SUPPORT_HPP_

#include <string>

#include "reap_sim/protocol.hpp"
#include "reap_sim/rollout.hpp"

namespace support
{

/// Desk-scale observations (64 x 64) keep wire frames small.
inline reap_sim::EnvConfig desk_config()
{
  reap_sim::EnvConfig cfg;
  cfg.obs.resolution = 0.3125;
  return cfg;
}

/// Drives one episode over the wire and returns the trace in the same
/// format as run_episode.
inline std::string wire_episode(
  reap_sim::Client & client, std::uint64_t env_id, std::uint64_t episode, std::uint64_t seed,
  const reap_sim::PolicyFn & policy)
{
  using reap_sim::Json;
  const auto hint_of = [](const Json & j) {
    return j.is_null() ? std::nullopt : std::optional<reap_sim::Action>(reap_sim::action_from_json(j));
  };
  Json r = client.call("reset", {{"env_id", env_id}, {"seed", seed}});
  reap_sim::Observation obs = reap_sim::observation_from_json(r.at("observation"));
  reap_sim::PolicyInput in;
  in.episode = episode;
  in.state = reap_sim::state_from_json(r.at("state"));
  in.expert_action = hint_of(r.at("expert_action"));
  std::string trace;
  for (int k = 0;; ++k) {
    in.step = k;
    in.observation = &obs;
    const Json step =
      client.call("step", {{"env_id", env_id}, {"action", reap_sim::to_json(policy(in))}});
    trace += reap_sim::trace_record(step, episode, k).dump();
    trace += '\n';
    if (step.at("status") != "running") {
      return trace;
    }
    obs = reap_sim::observation_from_json(step.at("observation"));
    in.state = reap_sim::state_from_json(step.at("state"));
    in.expert_action = hint_of(step.at("info").at("expert_action"));
  }
}

inline reap_sim::Action expert_or_wait(const reap_sim::PolicyInput & in)
{
  return in.expert_action.value_or(reap_sim::Action{});
}

}  // namespace support

#endif  // REAP_SIM_TESTS__SUPPORT_HPP_
