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

#ifndef REAP_SIM__JSON_IO_HPP_
#define REAP_SIM__JSON_IO_HPP_

#include <string>

#include "json.hpp"
#include "reap_sim/env.hpp"
#include "reap_sim/reeds_shepp.hpp"

namespace reap_sim
{

using Json = nlohmann::json;

/// Fields missing from `j` keep their values in `base`. Unknown keys are
/// rejected with parse-error so typos do not silently fall back.
EnvConfig env_config_from_json(const Json & j, const EnvConfig & base = {});
Json to_json(const EnvConfig & cfg);

Json to_json(const VehicleState & s);
Json to_json(const Action & a);
Json to_json(const RewardBreakdown & r);
Json to_json(const RsPath & p);
Json to_json(const Observation & obs);
Json raster_to_json(const Grid<double> & g);
Json to_json(const BevMaps & maps);

VehicleState state_from_json(const Json & j);
Action action_from_json(const Json & j);
Observation observation_from_json(const Json & j);

/// Wire form of a step; the observation goes under "observation".
Json to_json(const StepResult & r);

/// One trace record: everything from a step except the observation, tagged
/// with the episode and step index. In-process runs and remote clients both
/// build traces through this function so the bytes agree.
Json trace_record(const Json & step_json, std::uint64_t episode, int step);

/// Observation/action space description served by the spec command.
Json env_spec(const EnvConfig & cfg);

}  // namespace reap_sim

#endif  // REAP_SIM__JSON_IO_HPP_
