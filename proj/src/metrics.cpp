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

#include "reap_sim/metrics.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>

namespace reap_sim
{

namespace fs = std::filesystem;

int count_gear_shifts(const std::vector<double> & speeds)
{
  int shifts = 0;
  int last = 0;
  for (double v : speeds) {
    if (v == 0.0) {
      continue;
    }
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) {
      ++shifts;
    }
    last = sign;
  }
  return shifts;
}

std::vector<EpisodeSummary> summarize_trace(std::istream & in, const std::string & source)
{
  std::vector<EpisodeSummary> out;
  std::vector<double> speeds;
  int steps = 0;
  std::string line;
  int lineno = 0;
  const auto fail = [&](const std::string & what) -> void {
    throw Error(ErrorCode::kMalformedTrace, source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    Json rec;
    try {
      rec = Json::parse(line);
    } catch (const Json::parse_error & e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object() || !rec.contains("status") || !rec["status"].is_string()) {
      fail("record lacks a status");
    }
    const auto status = status_from_string(rec["status"].get<std::string>());
    if (!status) {
      fail("unknown status '" + rec["status"].get<std::string>() + "'");
    }
    if (!rec.contains("action") || !rec["action"].is_object() || !rec["action"].contains("v") ||
        !rec["action"]["v"].is_number()) {
      fail("record lacks action.v");
    }
    speeds.push_back(rec["action"]["v"].get<double>());
    ++steps;
    if (is_terminal(*status)) {
      if (!rec.contains("info") || !rec["info"].is_object() || !rec["info"].contains("sim_time") ||
          !rec["info"]["sim_time"].is_number()) {
        fail("terminal record lacks info.sim_time");
      }
      out.push_back({*status, count_gear_shifts(speeds), rec["info"]["sim_time"].get<double>(), steps});
      speeds.clear();
      steps = 0;
    }
  }
  if (steps > 0) {
    fail("trace ends inside an unfinished episode");
  }
  return out;
}

MetricsReport aggregate(const std::vector<EpisodeSummary> & episodes, int invalid)
{
  MetricsReport m;
  m.episodes = static_cast<int>(episodes.size());
  m.invalid = invalid;
  if (episodes.empty()) {
    return m;
  }
  int succ = 0;
  int coll = 0;
  int tout = 0;
  int bound = 0;
  double shifts = 0.0;
  double succ_time = 0.0;
  for (const auto & e : episodes) {
    shifts += e.gear_shifts;
    switch (e.status) {
      case EpisodeStatus::kSuccess:
        ++succ;
        succ_time += e.sim_time;
        break;
      case EpisodeStatus::kCollision:
        ++coll;
        break;
      case EpisodeStatus::kTimeout:
        ++tout;
        break;
      case EpisodeStatus::kOutOfBounds:
        ++bound;
        break;
      case EpisodeStatus::kRunning:
        throw Error(ErrorCode::kMalformedTrace, "episode without a terminal status");
    }
  }
  const double n = static_cast<double>(episodes.size());
  m.psr = 100.0 * succ / n;
  m.pcr = 100.0 * coll / n;
  m.ptr = 100.0 * tout / n;
  m.pbr = 100.0 * bound / n;
  m.ngs = shifts / n;
  if (succ > 0) {
    m.apt = succ_time / succ;
  }
  return m;
}

MetricsReport compute_metrics(const std::vector<std::string> & paths)
{
  std::vector<std::string> files;
  for (const auto & p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto & entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<EpisodeSummary> all;
  for (const auto & f : files) {
    std::ifstream in(f);
    if (!in) {
      throw Error(ErrorCode::kMalformedTrace, f + ": cannot open trace");
    }
    auto eps = summarize_trace(in, f);
    all.insert(all.end(), eps.begin(), eps.end());
  }
  return aggregate(all);
}

Json to_json(const MetricsReport & m)
{
  return {
    {"episodes", m.episodes}, {"invalid", m.invalid}, {"PSR", m.psr}, {"PCR", m.pcr},
    {"PTR", m.ptr},           {"PBR", m.pbr},         {"NGS", m.ngs},
    {"APT", m.apt ? Json(*m.apt) : Json(nullptr)}};
}

}  // namespace reap_sim
