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

#include "reap_sim/replay.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "reap_sim/codec.hpp"

namespace reap_sim
{

const char * to_string(ActionSource s) { return s == ActionSource::kExpert ? "expert" : "policy"; }

ObsId observation_id(const Observation & obs)
{
  std::vector<std::uint8_t> bytes;
  bytes.reserve(16 + obs.channels.size() * 4 + obs.scalars.size() * 8);
  const auto put = [&](const void * p, std::size_t n) {
    const auto * b = static_cast<const std::uint8_t *>(p);
    bytes.insert(bytes.end(), b, b + n);
  };
  put(&obs.size, sizeof(obs.size));
  put(&obs.resolution, sizeof(obs.resolution));
  put(obs.channels.data(), obs.channels.size() * sizeof(float));
  put(obs.scalars.data(), obs.scalars.size() * sizeof(double));
  return fnv1a64(bytes);
}

ObsId ObservationStore::put(const Observation & obs)
{
  const ObsId id = observation_id(obs);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(id);
  if (inserted) {
    it->second.obs = obs;
  } else if (!(it->second.obs == obs)) {
    // 64-bit collision; keep the first entry rather than corrupt it.
    throw Error(ErrorCode::kInvalidParameter, "observation hash collision");
  }
  ++it->second.refs;
  return id;
}

void ObservationStore::acquire(ObsId id)
{
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it != entries_.end()) {
    ++it->second.refs;
  }
}

void ObservationStore::release(ObsId id)
{
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it != entries_.end() && --it->second.refs == 0) {
    entries_.erase(it);
  }
}

std::optional<Observation> ObservationStore::get(ObsId id) const
{
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second.obs;
}

std::size_t ObservationStore::size() const
{
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t ObservationStore::refcount(ObsId id) const
{
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  return it == entries_.end() ? 0 : it->second.refs;
}

DualReplayBuffer::DualReplayBuffer(ReplayConfig cfg, ObservationStore * store) : cfg_(cfg), store_(store)
{
  if (cfg_.main_capacity == 0 || cfg_.success_capacity == 0) {
    throw Error(ErrorCode::kInvalidParameter, "buffer capacities must be positive");
  }
  if (!(cfg_.rho >= 0.0 && cfg_.rho <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "rho must lie in [0, 1]");
  }
}

DualReplayBuffer::~DualReplayBuffer()
{
  if (!store_) {
    return;
  }
  for (const auto * ring : {&main_, &success_}) {
    for (const auto & t : *ring) {
      store_->release(t.obs_id);
      store_->release(t.next_obs_id);
    }
  }
}

void DualReplayBuffer::append(std::deque<Transition> & ring, std::size_t capacity, const Transition & t)
{
  if (store_) {
    store_->acquire(t.obs_id);
    store_->acquire(t.next_obs_id);
  }
  ring.push_back(t);
  if (ring.size() > capacity) {
    if (store_) {
      store_->release(ring.front().obs_id);
      store_->release(ring.front().next_obs_id);
    }
    ring.pop_front();
  }
}

void DualReplayBuffer::push_episode(
  const std::vector<Transition> & transitions, EpisodeStatus terminal, bool had_collision)
{
  std::unique_lock lock(mutex_);
  const bool clean_success = terminal == EpisodeStatus::kSuccess && !had_collision;
  for (const auto & t : transitions) {
    append(main_, cfg_.main_capacity, t);
    if (clean_success) {
      append(success_, cfg_.success_capacity, t);
    }
  }
}

SampleBatch DualReplayBuffer::sample(std::size_t batch_size, Rng & rng) const
{
  std::shared_lock lock(mutex_);
  if (main_.empty()) {
    throw Error(ErrorCode::kEmptyBuffer, "main replay buffer is empty");
  }
  SampleBatch out;
  out.from_main = success_.empty()
                    ? batch_size
                    : static_cast<std::size_t>(std::floor(cfg_.rho * static_cast<double>(batch_size)));
  out.items.reserve(batch_size);
  for (std::size_t i = 0; i < out.from_main; ++i) {
    out.items.push_back(main_[rng.below(main_.size())]);
  }
  for (std::size_t i = out.from_main; i < batch_size; ++i) {
    out.items.push_back(success_[rng.below(success_.size())]);
  }
  return out;
}

std::size_t DualReplayBuffer::main_size() const
{
  std::shared_lock lock(mutex_);
  return main_.size();
}

std::size_t DualReplayBuffer::success_size() const
{
  std::shared_lock lock(mutex_);
  return success_.size();
}

std::vector<Transition> DualReplayBuffer::main_contents() const
{
  std::shared_lock lock(mutex_);
  return {main_.begin(), main_.end()};
}

std::vector<Transition> DualReplayBuffer::success_contents() const
{
  std::shared_lock lock(mutex_);
  return {success_.begin(), success_.end()};
}

double MixSchedule::q(double t) const
{
  const double frac = std::clamp(t / t_decay, 0.0, 1.0);
  return q0 + (q_max - q0) * frac;
}

double expert_probability(double t, const MixSchedule & schedule)
{
  if (!(t >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "epoch must be non-negative");
  }
  return schedule.expert_probability(t);
}

ActionSource action_source(double t, bool expert_available, Rng & rng, const MixSchedule & schedule)
{
  if (!expert_available) {
    return ActionSource::kPolicy;
  }
  return rng.uniform01() < expert_probability(t, schedule) ? ActionSource::kExpert : ActionSource::kPolicy;
}

}  // namespace reap_sim
