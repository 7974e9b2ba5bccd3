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

#ifndef REAP_SIM__REPLAY_HPP_
#define REAP_SIM__REPLAY_HPP_

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "reap_sim/env.hpp"

namespace reap_sim
{

enum class ActionSource { kExpert, kPolicy };

const char * to_string(ActionSource s);

using ObsId = std::uint64_t;

struct Transition
{
  ObsId obs_id{0};
  Action action;
  RewardBreakdown reward;
  ObsId next_obs_id{0};
  bool done{false};
  // Terminal status for done transitions, kRunning otherwise.
  EpisodeStatus status{EpisodeStatus::kRunning};
  ActionSource source{ActionSource::kPolicy};
  std::uint64_t episode_id{0};
};

/// Content-addressed, reference-counted observation storage. Identical
/// observations share one entry.
class ObservationStore
{
public:
  ObsId put(const Observation & obs);
  void acquire(ObsId id);
  void release(ObsId id);
  std::optional<Observation> get(ObsId id) const;
  std::size_t size() const;
  std::size_t refcount(ObsId id) const;

private:
  struct Entry
  {
    Observation obs;
    std::size_t refs{0};
  };
  mutable std::mutex mutex_;
  std::unordered_map<ObsId, Entry> entries_;
};

ObsId observation_id(const Observation & obs);

struct ReplayConfig
{
  std::size_t main_capacity{100000};
  std::size_t success_capacity{20000};
  double rho{0.75};
};

struct SampleBatch
{
  std::vector<Transition> items;
  std::size_t from_main{0};
};

/// Main ring plus a side ring holding only clean successful episodes.
/// push_episode is atomic with respect to sample.
class DualReplayBuffer
{
public:
  explicit DualReplayBuffer(ReplayConfig cfg = {}, ObservationStore * store = nullptr);
  ~DualReplayBuffer();
  DualReplayBuffer(const DualReplayBuffer &) = delete;
  DualReplayBuffer & operator=(const DualReplayBuffer &) = delete;

  void push_episode(const std::vector<Transition> & transitions, EpisodeStatus terminal, bool had_collision);

  /// floor(rho * n) from main, the rest from success; all from main when the
  /// success ring is empty. Throws empty-buffer when main is empty.
  SampleBatch sample(std::size_t batch_size, Rng & rng) const;

  std::size_t main_size() const;
  std::size_t success_size() const;
  std::vector<Transition> main_contents() const;
  std::vector<Transition> success_contents() const;
  const ReplayConfig & config() const { return cfg_; }

private:
  void append(std::deque<Transition> & ring, std::size_t capacity, const Transition & t);

  ReplayConfig cfg_;
  ObservationStore * store_;
  mutable std::shared_mutex mutex_;
  std::deque<Transition> main_;
  std::deque<Transition> success_;
};

/// q(t) = q0 + (q_max - q0) * min(t / t_decay, 1); the expert is followed
/// with probability p(t) = 1 - q(t).
struct MixSchedule
{
  double q0{0.0};
  double q_max{1.0};
  double t_decay{8000.0};

  double q(double t) const;
  double expert_probability(double t) const { return 1.0 - q(t); }
};

double expert_probability(double t, const MixSchedule & schedule = {});

ActionSource action_source(double t, bool expert_available, Rng & rng, const MixSchedule & schedule = {});

}  // namespace reap_sim

#endif  // REAP_SIM__REPLAY_HPP_
