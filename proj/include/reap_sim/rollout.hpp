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

#ifndef REAP_SIM__ROLLOUT_HPP_
#define REAP_SIM__ROLLOUT_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reap_sim/metrics.hpp"
#include "reap_sim/protocol.hpp"

namespace reap_sim
{

enum class PolicyKind { kRsExpert, kRandom, kRemote };

std::optional<PolicyKind> policy_from_string(std::string_view name);

/// What a policy sees before choosing the next action.
struct PolicyInput
{
  std::uint64_t episode{0};
  int step{0};
  const Observation * observation{nullptr};
  VehicleState state;
  std::optional<Action> expert_action;
};

using PolicyFn = std::function<Action(const PolicyInput &)>;

struct RolloutOptions
{
  PolicyKind policy{PolicyKind::kRsExpert};
  int episodes{100};
  std::uint64_t seed{0};
  // Empty: keep traces in memory only.
  std::string out_dir;
  // Remote policy: listen here for the acting client (0 = any free port).
  std::uint16_t remote_port{0};
  // Called with the bound port before waiting for the remote client.
  std::function<void(std::uint16_t)> on_listen;
};

struct RolloutResult
{
  MetricsReport report;
  std::vector<EpisodeSummary> episodes;
  // One JSON-lines trace per classified episode.
  std::vector<std::string> traces;
};

/// Per-episode reset seeds derived from the rollout seed.
std::vector<std::uint64_t> episode_seeds(std::uint64_t seed, int episodes);

/// Runs one episode to termination and returns its trace text.
std::string run_episode(Env & env, std::uint64_t episode, std::uint64_t seed, const PolicyFn & policy,
                        EpisodeSummary * summary = nullptr);

RolloutResult rollout(
  std::shared_ptr<const Scenario> scenario, const EnvConfig & config, const RolloutOptions & options);

/// Client side of the remote policy: connects to a rollout listening for an
/// actor and answers every "act" request with policy(...) until "done".
/// Returns the final report payload.
Json serve_remote_policy(const std::string & host, std::uint16_t port, const PolicyFn & policy);

}  // namespace reap_sim

#endif  // REAP_SIM__ROLLOUT_HPP_
