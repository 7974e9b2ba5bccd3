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

#ifndef REAP_SIM__METRICS_HPP_
#define REAP_SIM__METRICS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "reap_sim/json_io.hpp"
#include "reap_sim/reward.hpp"

namespace reap_sim
{

/// Outcome of one finished episode as read back from its trace.
struct EpisodeSummary
{
  EpisodeStatus status{EpisodeStatus::kRunning};
  int gear_shifts{0};
  double sim_time{0.0};
  int steps{0};
};

/// Rates are percentages of classified episodes. APT is empty when no
/// episode succeeded.
struct MetricsReport
{
  int episodes{0};
  int invalid{0};
  double psr{0.0};
  double pcr{0.0};
  double ptr{0.0};
  double pbr{0.0};
  double ngs{0.0};
  std::optional<double> apt;
};

/// Sign alternations between consecutive nonzero speed commands.
int count_gear_shifts(const std::vector<double> & speeds);

/// Reads every episode in a JSON-lines trace. Each record needs "status",
/// "action.v" and "info.sim_time"; an episode ends at its first terminal
/// status. Throws malformed-trace naming `source` and the 1-based line.
std::vector<EpisodeSummary> summarize_trace(std::istream & in, const std::string & source);

MetricsReport aggregate(const std::vector<EpisodeSummary> & episodes, int invalid = 0);

/// Accepts trace files or directories (every *.jsonl inside, sorted).
MetricsReport compute_metrics(const std::vector<std::string> & paths);

Json to_json(const MetricsReport & m);

}  // namespace reap_sim

#endif  // REAP_SIM__METRICS_HPP_
