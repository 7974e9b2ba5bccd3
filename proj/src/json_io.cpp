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

#include "reap_sim/json_io.hpp"

#include <initializer_list>

#include "reap_sim/codec.hpp"

namespace reap_sim
{

namespace
{

[[noreturn]] void parse_fail(const std::string & what) { throw Error(ErrorCode::kParseError, what); }

void only_keys(const Json & j, const char * where, std::initializer_list<const char *> keys)
{
  if (!j.is_object()) {
    parse_fail(std::string("'") + where + "' must be an object");
  }
  for (const auto & item : j.items()) {
    bool known = false;
    for (const char * k : keys) {
      known = known || item.key() == k;
    }
    if (!known) {
      parse_fail(std::string("unknown key '") + item.key() + "' in '" + where + "'");
    }
  }
}

void read(const Json & j, const char * key, double & out)
{
  if (!j.contains(key)) {
    return;
  }
  if (!j.at(key).is_number()) {
    parse_fail(std::string("'") + key + "' must be a number");
  }
  out = j.at(key).get<double>();
}

void read(const Json & j, const char * key, int & out)
{
  if (!j.contains(key)) {
    return;
  }
  if (!j.at(key).is_number_integer()) {
    parse_fail(std::string("'") + key + "' must be an integer");
  }
  out = j.at(key).get<int>();
}

void read(const Json & j, const char * key, bool & out)
{
  if (!j.contains(key)) {
    return;
  }
  if (!j.at(key).is_boolean()) {
    parse_fail(std::string("'") + key + "' must be a boolean");
  }
  out = j.at(key).get<bool>();
}

double need_number(const Json & j, const char * key)
{
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    parse_fail(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

EnvConfig env_config_from_json(const Json & j, const EnvConfig & base)
{
  EnvConfig c = base;
  only_keys(
    j, "config",
    {"vehicle", "thresholds", "reward", "dt", "n_samples", "max_steps", "obs", "perturb", "gate", "d0", "tau",
     "max_neighbors", "neighbor", "budget", "rs_check_step"});
  if (j.contains("vehicle")) {
    const Json & v = j.at("vehicle");
    only_keys(
      v, "vehicle",
      {"wheelbase", "width", "length", "rear_overhang", "front_overhang", "max_speed", "max_steer", "h_step",
       "h_over"});
    read(v, "wheelbase", c.vehicle.wheelbase);
    read(v, "width", c.vehicle.width);
    read(v, "length", c.vehicle.length);
    read(v, "rear_overhang", c.vehicle.rear_overhang);
    read(v, "front_overhang", c.vehicle.front_overhang);
    read(v, "max_speed", c.vehicle.max_speed);
    read(v, "max_steer", c.vehicle.max_steer);
    read(v, "h_step", c.vehicle.h_step);
    read(v, "h_over", c.vehicle.h_over);
    c.thresholds = CollisionThresholds::from(c.vehicle);
  }
  if (j.contains("thresholds")) {
    const Json & t = j.at("thresholds");
    only_keys(t, "thresholds", {"h_step", "h_over"});
    read(t, "h_step", c.thresholds.h_step);
    read(t, "h_over", c.thresholds.h_over);
  }
  if (j.contains("reward")) {
    const Json & r = j.at("reward");
    only_keys(
      r, "reward", {"r_succ", "k_pc", "r_anchor", "r_timeout", "r_bound", "w_iou", "w_sc", "success"});
    read(r, "r_succ", c.reward.r_succ);
    read(r, "k_pc", c.reward.k_pc);
    read(r, "r_anchor", c.reward.r_anchor);
    read(r, "r_timeout", c.reward.r_timeout);
    read(r, "r_bound", c.reward.r_bound);
    read(r, "w_iou", c.reward.w_iou);
    read(r, "w_sc", c.reward.w_sc);
    if (r.contains("success")) {
      const Json & s = r.at("success");
      only_keys(s, "success", {"lateral", "longitudinal", "heading", "heading_symmetric"});
      read(s, "lateral", c.reward.success.lateral);
      read(s, "longitudinal", c.reward.success.longitudinal);
      read(s, "heading", c.reward.success.heading);
      read(s, "heading_symmetric", c.reward.success.heading_symmetric);
    }
  }
  read(j, "dt", c.dt);
  read(j, "n_samples", c.n_samples);
  read(j, "max_steps", c.max_steps);
  if (j.contains("obs")) {
    only_keys(j.at("obs"), "obs", {"resolution", "range"});
    read(j.at("obs"), "resolution", c.obs.resolution);
    read(j.at("obs"), "range", c.obs.range);
  }
  if (j.contains("perturb")) {
    only_keys(j.at("perturb"), "perturb", {"dx_max", "dtheta_max"});
    read(j.at("perturb"), "dx_max", c.perturb.dx_max);
    read(j.at("perturb"), "dtheta_max", c.perturb.dtheta_max);
  }
  if (j.contains("gate")) {
    only_keys(j.at("gate"), "gate", {"gamma", "sigma_length_fraction", "sigma_width_fraction"});
    read(j.at("gate"), "gamma", c.gate.gamma);
    read(j.at("gate"), "sigma_length_fraction", c.gate.sigma_length_fraction);
    read(j.at("gate"), "sigma_width_fraction", c.gate.sigma_width_fraction);
  }
  read(j, "d0", c.d0);
  read(j, "tau", c.tau);
  read(j, "max_neighbors", c.max_neighbors);
  if (j.contains("neighbor")) {
    only_keys(j.at("neighbor"), "neighbor", {"length", "width", "height"});
    read(j.at("neighbor"), "length", c.neighbor.length);
    read(j.at("neighbor"), "width", c.neighbor.width);
    read(j.at("neighbor"), "height", c.neighbor.height);
  }
  if (j.contains("budget")) {
    only_keys(j.at("budget"), "budget", {"per_query_s", "episode_s", "seconds_per_check"});
    read(j.at("budget"), "per_query_s", c.budget.per_query_s);
    read(j.at("budget"), "episode_s", c.budget.episode_remaining_s);
    read(j.at("budget"), "seconds_per_check", c.budget.seconds_per_check);
  }
  read(j, "rs_check_step", c.rs_check_step);
  c.validate();
  return c;
}

Json to_json(const EnvConfig & c)
{
  const auto & v = c.vehicle;
  const auto & r = c.reward;
  return {
    {"vehicle",
     {{"wheelbase", v.wheelbase},
      {"width", v.width},
      {"length", v.length},
      {"rear_overhang", v.rear_overhang},
      {"front_overhang", v.front_overhang},
      {"max_speed", v.max_speed},
      {"max_steer", v.max_steer},
      {"h_step", v.h_step},
      {"h_over", v.h_over}}},
    {"thresholds", {{"h_step", c.thresholds.h_step}, {"h_over", c.thresholds.h_over}}},
    {"reward",
     {{"r_succ", r.r_succ},
      {"k_pc", r.k_pc},
      {"r_anchor", r.r_anchor},
      {"r_timeout", r.r_timeout},
      {"r_bound", r.r_bound},
      {"w_iou", r.w_iou},
      {"w_sc", r.w_sc},
      {"success",
       {{"lateral", r.success.lateral},
        {"longitudinal", r.success.longitudinal},
        {"heading", r.success.heading},
        {"heading_symmetric", r.success.heading_symmetric}}}}},
    {"dt", c.dt},
    {"n_samples", c.n_samples},
    {"max_steps", c.max_steps},
    {"obs", {{"resolution", c.obs.resolution}, {"range", c.obs.range}}},
    {"perturb", {{"dx_max", c.perturb.dx_max}, {"dtheta_max", c.perturb.dtheta_max}}},
    {"gate",
     {{"gamma", c.gate.gamma},
      {"sigma_length_fraction", c.gate.sigma_length_fraction},
      {"sigma_width_fraction", c.gate.sigma_width_fraction}}},
    {"d0", c.d0},
    {"tau", c.tau},
    {"max_neighbors", c.max_neighbors},
    {"neighbor", {{"length", c.neighbor.length}, {"width", c.neighbor.width}, {"height", c.neighbor.height}}},
    {"budget",
     {{"per_query_s", c.budget.per_query_s},
      {"episode_s", c.budget.episode_remaining_s},
      {"seconds_per_check", c.budget.seconds_per_check}}},
    {"rs_check_step", c.rs_check_step}};
}

Json to_json(const VehicleState & s) { return {{"x", s.x}, {"y", s.y}, {"psi", s.psi}}; }

Json to_json(const Action & a) { return {{"v", a.v}, {"omega", a.omega}}; }

Json to_json(const RewardBreakdown & r)
{
  return {{"succ", r.succ},       {"pc", r.pc},   {"anchor", r.anchor}, {"timeout", r.timeout},
          {"bound", r.bound},     {"iou", r.iou}, {"sc", r.sc},         {"total", r.total}};
}

Json to_json(const RsPath & p)
{
  Json segs = Json::array();
  for (const auto & s : p.segments) {
    segs.push_back({{"kind", to_string(s.kind)}, {"length", s.signed_length}});
  }
  return {{"segments", segs}, {"total_length", p.total_length}, {"r_min", p.r_min}};
}

Json to_json(const Observation & obs)
{
  Json names = Json::array();
  for (const char * n : kObsChannels) {
    names.push_back(n);
  }
  return {
    {"channels", names},
    {"shape", {static_cast<int>(kObsChannels.size()), obs.size, obs.size}},
    {"resolution", obs.resolution},
    {"encoding", "base64-f32le"},
    {"data", encode_f32le(obs.channels)},
    {"scalars", obs.scalars}};
}

Json raster_to_json(const Grid<double> & g)
{
  std::vector<float> f(g.data.begin(), g.data.end());
  return {
    {"shape", {g.meta.height, g.meta.width}},
    {"origin", {g.meta.origin_x, g.meta.origin_y}},
    {"resolution", g.meta.resolution},
    {"encoding", "base64-f32le"},
    {"data", encode_f32le(f)}};
}

Json to_json(const BevMaps & maps)
{
  return {
    {"occupancy", raster_to_json(maps.occupancy)},
    {"slot_map", raster_to_json(maps.slot_map)},
    {"target_map", raster_to_json(maps.target_map)},
    {"target_slot", maps.target_map.slot_id}};
}

VehicleState state_from_json(const Json & j)
{
  return {need_number(j, "x"), need_number(j, "y"), need_number(j, "psi")};
}

Action action_from_json(const Json & j) { return {need_number(j, "v"), need_number(j, "omega")}; }

Observation observation_from_json(const Json & j)
{
  if (!j.is_object() || !j.contains("shape") || !j.contains("data") || !j.contains("scalars")) {
    parse_fail("observation needs shape, data and scalars");
  }
  Observation obs;
  const auto shape = j.at("shape").get<std::vector<int>>();
  if (shape.size() != 3 || shape[0] != static_cast<int>(kObsChannels.size()) || shape[1] != shape[2]) {
    parse_fail("unexpected observation shape");
  }
  obs.size = shape[1];
  obs.resolution = need_number(j, "resolution");
  obs.channels = decode_f32le(j.at("data").get<std::string>());
  if (obs.channels.size() != static_cast<std::size_t>(shape[0]) * obs.size * obs.size) {
    parse_fail("observation data does not match its shape");
  }
  const auto sc = j.at("scalars").get<std::vector<double>>();
  if (sc.size() != obs.scalars.size()) {
    parse_fail("observation needs 6 scalars");
  }
  std::copy(sc.begin(), sc.end(), obs.scalars.begin());
  return obs;
}

Json to_json(const StepResult & r)
{
  const auto & i = r.info;
  return {
    {"observation", to_json(r.observation)},
    {"action", to_json(r.action)},
    {"state", to_json(r.state)},
    {"reward", to_json(r.reward)},
    {"status", to_string(r.status)},
    {"info",
     {{"gear_shifts", i.gear_shifts},
      {"sim_time", i.sim_time},
      {"anchor_granted", i.anchor_granted},
      {"expert_available", i.expert_available},
      {"expert_action", i.expert_action ? to_json(*i.expert_action) : Json(nullptr)},
      {"collision_fraction", i.collision_fraction},
      {"collision_layer", to_string(i.collision_layer)},
      {"iou", i.iou}}}};
}

Json trace_record(const Json & step_json, std::uint64_t episode, int step)
{
  Json out = Json::object();
  out["episode"] = episode;
  out["step"] = step;
  for (const auto & item : step_json.items()) {
    if (item.key() != "observation") {
      out[item.key()] = item.value();
    }
  }
  return out;
}

Json env_spec(const EnvConfig & cfg)
{
  Json channels = Json::array();
  for (const char * n : kObsChannels) {
    channels.push_back(n);
  }
  Json scalars = Json::array();
  for (const char * n : kObsScalars) {
    scalars.push_back(n);
  }
  const int n = cfg.obs.cells();
  return {
    {"observation",
     {{"channels", channels},
      {"shape", {static_cast<int>(kObsChannels.size()), n, n}},
      {"resolution", cfg.obs.resolution},
      {"range", cfg.obs.range},
      {"scalars", scalars}}},
    {"action",
     {{"names", {"v", "omega"}},
      {"low", {-cfg.vehicle.max_speed, -cfg.vehicle.max_steer}},
      {"high", {cfg.vehicle.max_speed, cfg.vehicle.max_steer}}}},
    {"dt", cfg.dt},
    {"n_samples", cfg.n_samples},
    {"max_steps", cfg.max_steps}};
}

}  // namespace reap_sim
