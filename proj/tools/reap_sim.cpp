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

// reap-sim command line: serve, rollout, plan, metrics, maps, scenario.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "reap_sim/expert.hpp"
#include "reap_sim/metrics.hpp"
#include "reap_sim/rollout.hpp"

namespace
{

using namespace reap_sim;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

struct ConfigError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

void setup_logging()
{
  auto logger = spdlog::stderr_color_mt("reap-sim");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char * lvl = std::getenv("REAP_SIM_LOG")) {
    const auto level = spdlog::level::from_str(lvl);
    // from_str maps unknown names to off; only accept it when asked for.
    if (level == spdlog::level::off && std::string(lvl) != "off") {
      spdlog::warn("ignoring unknown REAP_SIM_LOG level '{}'", lvl);
    } else {
      spdlog::set_level(level);
    }
  }
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EnvConfig load_config(const std::string & path)
{
  if (path.empty()) {
    return {};
  }
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error & e) {
    throw ConfigError(path + ": " + e.what());
  }
  return env_config_from_json(j);
}

/// A file path, or the name of a built-in preset.
std::shared_ptr<const Scenario> load_scenario_arg(const std::string & arg)
{
  if (std::filesystem::is_regular_file(arg)) {
    return std::make_shared<const Scenario>(load_scenario_file(arg));
  }
  for (const auto & n : presets::names()) {
    if (n == arg) {
      return std::make_shared<const Scenario>(presets::by_name(arg));
    }
  }
  throw ConfigError("scenario '" + arg + "' is neither a file nor a preset");
}

VehicleState parse_pose(const std::string & text)
{
  VehicleState s;
  char c1 = 0;
  char c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> s.x >> c1 >> s.y >> c2 >> s.psi) || c1 != ',' || c2 != ',') {
    throw ConfigError("pose must look like \"x,y,psi\"");
  }
  return s;
}

int cmd_serve(int port, const std::string & dir, const std::string & config, bool any)
{
  if (port < 0 || port > 65535) {
    throw ConfigError("port out of range");
  }
  if (!dir.empty() && !std::filesystem::is_directory(dir)) {
    throw ConfigError("scenario directory '" + dir + "' does not exist");
  }
  Server server(load_config(config), std::make_shared<ScenarioCatalog>(dir));
  const auto bound = server.start(static_cast<std::uint16_t>(port), any);
  spdlog::info("listening on port {}", bound);
  std::cout << "port " << bound << std::endl;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_stop) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  spdlog::info("shutting down");
  server.stop();
  return 0;
}

int cmd_rollout(
  const std::string & scenario, const std::string & policy, int episodes, std::uint64_t seed,
  const std::string & out, const std::string & config, int port)
{
  const auto kind = policy_from_string(policy);
  if (!kind) {
    throw ConfigError("unknown policy '" + policy + "'");
  }
  auto sc = load_scenario_arg(scenario);
  RolloutOptions opts;
  opts.policy = *kind;
  opts.episodes = episodes;
  opts.seed = seed;
  opts.out_dir = out;
  opts.remote_port = static_cast<std::uint16_t>(port);
  opts.on_listen = [](std::uint16_t p) {
    spdlog::info("waiting for remote actor on port {}", p);
    std::cout << "port " << p << std::endl;
  };
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = rollout(sc, load_config(config), opts);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  spdlog::info("{} episodes in {:.2f} s", episodes, wall);
  std::cout << to_json(result.report).dump(2) << std::endl;
  return 0;
}

int cmd_plan(const std::string & scenario, const std::string & from, int slot_id, const std::string & config)
{
  auto sc = load_scenario_arg(scenario);
  const EnvConfig cfg = load_config(config);
  if (slot_id < 0 || static_cast<std::size_t>(slot_id) >= sc->slots.size()) {
    throw ConfigError("slot index out of range");
  }
  const VehicleState start = parse_pose(from);
  const ParkingSlot & slot = sc->slots[static_cast<std::size_t>(slot_id)];
  const VehicleState goal = goal_pose_of_slot(slot, cfg.vehicle);
  const RsPath path = rs_shortest_path(start, goal, cfg.vehicle.min_turning_radius());
  const bool free = rs_collision_free(path, start, cfg.vehicle, sc->elevation, cfg.thresholds, cfg.rs_check_step);
  Json out = to_json(path);
  out["start"] = to_json(start);
  out["goal"] = to_json(goal);
  out["collision_free"] = free;
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_metrics(const std::vector<std::string> & traces)
{
  std::cout << to_json(compute_metrics(traces)).dump(2) << std::endl;
  return 0;
}

int cmd_maps(const std::string & scenario, const std::string & what, const std::string & out, int slot_id, int bits)
{
  auto sc = load_scenario_arg(scenario);
  Grid<double> raster;
  if (what == "tsdf") {
    raster = sc->tsdf;
  } else if (what == "occupancy") {
    raster = Grid<double>(sc->occupancy.meta, 0.0);
    for (std::size_t i = 0; i < raster.data.size(); ++i) {
      raster.data[i] = sc->occupancy.data[i] ? 1.0 : 0.0;
    }
  } else if (what == "heatmap") {
    if (slot_id < 0 || static_cast<std::size_t>(slot_id) >= sc->slots.size()) {
      throw ConfigError("slot index out of range");
    }
    raster = target_heatmap(sc->slots[static_cast<std::size_t>(slot_id)], sc->elevation.meta);
  } else {
    throw ConfigError("--dump must be tsdf, heatmap or occupancy");
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + out + "'");
  }
  write_pgm(f, raster, bits);
  spdlog::info("wrote {}x{} {} map to {}", raster.meta.width, raster.meta.height, what, out);
  return 0;
}

int cmd_scenario(const std::string & preset, const std::string & out)
{
  const Scenario sc = presets::by_name(preset);
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write '" + out + "'");
  }
  f << save_scenario(sc) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  setup_logging();
  CLI::App app{"reap-sim: parking simulator, environment server and evaluation tools"};
  app.require_subcommand(1);

  int port = 5555;
  std::string scen_dir;
  std::string config;
  bool any = false;
  auto * serve = app.add_subcommand("serve", "Run the TCP environment server");
  serve->add_option("--port", port, "TCP port (0 picks a free one)");
  serve->add_option("--scenarios", scen_dir, "Directory of scenario files");
  serve->add_option("--config", config, "Environment config (JSON)");
  serve->add_flag("--any-interface", any, "Listen on all interfaces instead of loopback");

  std::string scenario;
  std::string policy = "rs-expert";
  int episodes = 100;
  std::uint64_t seed = 0;
  std::string out;
  int remote_port = 0;
  auto * roll = app.add_subcommand("rollout", "Run seeded episodes and write traces");
  roll->add_option("--scenario", scenario, "Scenario file or preset name")->required();
  roll->add_option("--policy", policy, "rs-expert | random | remote");
  roll->add_option("--episodes", episodes, "Episode count");
  roll->add_option("--seed", seed, "Rollout seed");
  roll->add_option("--out", out, "Output directory for traces and report.json");
  roll->add_option("--config", config, "Environment config (JSON)");
  roll->add_option("--port", remote_port, "Port to wait on for a remote actor");

  std::string from;
  int slot_id = 0;
  auto * plan = app.add_subcommand("plan", "Reeds-Shepp plan from a pose into a slot");
  plan->add_option("--scenario", scenario, "Scenario file or preset name")->required();
  plan->add_option("--from", from, "Start pose \"x,y,psi\"")->required();
  plan->add_option("--slot", slot_id, "Slot index");
  plan->add_option("--config", config, "Environment config (JSON)");

  std::vector<std::string> traces;
  auto * metrics = app.add_subcommand("metrics", "Aggregate metrics over trace files");
  metrics->add_option("--traces", traces, "Trace files or directories")->required();

  std::string dump;
  int bits = 8;
  auto * maps = app.add_subcommand("maps", "Dump a scenario raster as PGM");
  maps->add_option("--scenario", scenario, "Scenario file or preset name")->required();
  maps->add_option("--dump", dump, "tsdf | heatmap | occupancy")->required();
  maps->add_option("--out", out, "Output PGM file")->required();
  maps->add_option("--slot", slot_id, "Slot index for the heatmap");
  maps->add_option("--bits", bits, "8 or 16")->check(CLI::IsMember({8, 16}));

  std::string preset;
  auto * scen = app.add_subcommand("scenario", "Export a built-in scenario to a file");
  scen->add_option("--preset", preset, "Preset name")->required()->check(CLI::IsMember(presets::names()));
  scen->add_option("--out", out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*serve) {
      return cmd_serve(port, scen_dir, config, any);
    }
    if (*roll) {
      return cmd_rollout(scenario, policy, episodes, seed, out, config, remote_port);
    }
    if (*plan) {
      return cmd_plan(scenario, from, slot_id, config);
    }
    if (*metrics) {
      return cmd_metrics(traces);
    }
    if (*maps) {
      return cmd_maps(scenario, dump, out, slot_id, bits);
    }
    if (*scen) {
      return cmd_scenario(preset, out);
    }
  } catch (const ConfigError & e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const Error & e) {
    spdlog::error("{}: {}", to_string(e.code()), e.what());
    switch (e.code()) {
      case ErrorCode::kParseError:
      case ErrorCode::kValidationError:
      case ErrorCode::kInvalidParameter:
      case ErrorCode::kMalformedTrace:
        return kExitConfig;
      default:
        return kExitRuntime;
    }
  } catch (const std::exception & e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return kExitRuntime;
}
