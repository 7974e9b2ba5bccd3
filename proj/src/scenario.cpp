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

#include "reap_sim/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "reap_sim/codec.hpp"
#include "reap_sim/collision.hpp"

namespace reap_sim
{

using nlohmann::json;

namespace
{

[[noreturn]] void invalid(const std::string & what)
{
  throw Error(ErrorCode::kValidationError, what);
}

const json & field(const json & obj, const char * key)
{
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

double number(const json & obj, const char * key)
{
  const json & v = field(obj, key);
  if (!v.is_number()) {
    throw Error(ErrorCode::kParseError, std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

int integer(const json & obj, const char * key)
{
  const json & v = field(obj, key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kParseError, std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

double number_or(const json & obj, const char * key, double fallback)
{
  return obj.contains(key) ? number(obj, key) : fallback;
}

ParkingSlot slot_from_json(const json & j)
{
  ParkingSlot s;
  s.cx = number(j, "cx");
  s.cy = number(j, "cy");
  s.heading = number(j, "heading");
  s.length = number(j, "length");
  s.width = number(j, "width");
  const std::string kind = j.value("kind", std::string("standard"));
  if (kind == "standard") {
    s.kind = SlotKind::kStandard;
  } else if (kind == "mechanical") {
    s.kind = SlotKind::kMechanical;
  } else {
    throw Error(ErrorCode::kParseError, "unknown slot kind '" + kind + "'");
  }
  s.panel_height = number_or(j, "panel_height", s.panel_height);
  s.ramp_rise = number_or(j, "ramp_rise", s.ramp_rise);
  s.barrier_height = number_or(j, "barrier_height", s.barrier_height);
  return s;
}

json slot_to_json(const ParkingSlot & s)
{
  json j = {
    {"cx", s.cx},         {"cy", s.cy},       {"heading", s.heading},
    {"length", s.length}, {"width", s.width},
    {"kind", s.kind == SlotKind::kMechanical ? "mechanical" : "standard"}};
  if (s.kind == SlotKind::kMechanical) {
    j["panel_height"] = s.panel_height;
    j["ramp_rise"] = s.ramp_rise;
    j["barrier_height"] = s.barrier_height;
  }
  return j;
}

// Some free, in-bounds cell lies within [r_min, r_max] of the slot center.
bool annulus_has_free_cell(const Scenario & sc, const ParkingSlot & slot)
{
  const GridMeta & m = sc.elevation.meta;
  const double r0 = sc.spawn.r_min;
  const double r1 = sc.spawn.r_max;
  const int span = static_cast<int>(std::ceil(r1 / m.resolution)) + 1;
  const auto center = m.world_to_cell(slot.center());
  if (!center) {
    return false;
  }
  for (int dy = -span; dy <= span; ++dy) {
    for (int dx = -span; dx <= span; ++dx) {
      const int ix = center->ix + dx;
      const int iy = center->iy + dy;
      if (!m.in_grid(ix, iy)) {
        continue;
      }
      const Vec2 p = m.cell_center(ix, iy);
      const double r = (p - slot.center()).norm();
      if (r < r0 || r > r1 || !sc.bounds.contains(p)) {
        continue;
      }
      if (sc.occupancy.at(ix, iy) == 0) {
        return true;
      }
    }
  }
  return false;
}

GridMeta centered_meta(double half_x, double half_y, double resolution = 0.05)
{
  GridMeta m;
  m.resolution = resolution;
  m.width = static_cast<int>(std::lround(2.0 * half_x / resolution)) + 1;
  m.height = static_cast<int>(std::lround(2.0 * half_y / resolution)) + 1;
  m.origin_x = -half_x;
  m.origin_y = -half_y;
  return m;
}

}  // namespace

void Scenario::derive()
{
  occupancy = occupancy_from_elevation(elevation, h_occ);
  tsdf = tsdf_from_distance(euclidean_distance_transform(occupancy), 1.0, 0.5);
}

void Scenario::validate() const
{
  const GridMeta & m = elevation.meta;
  if (!(m.resolution > 0.0)) {
    invalid("grid resolution must be positive");
  }
  if (m.width < 1 || m.height < 1) {
    invalid("grid width and height must be at least 1");
  }
  if (elevation.data.size() != m.cell_count()) {
    invalid("elevation size does not match width x height");
  }
  for (float h : elevation.data) {
    if (!std::isfinite(h)) {
      invalid("elevation heights must be finite");
    }
  }
  if (!(bounds.x0 < bounds.x1) || !(bounds.y0 < bounds.y1)) {
    invalid("bounds are empty");
  }
  if (!m.contains({bounds.x0, bounds.y0}) || !m.contains({bounds.x1, bounds.y1})) {
    invalid("bounds outside grid");
  }
  if (!(spawn.r_min >= 0.0) || !(spawn.r_max > spawn.r_min)) {
    invalid("spawn radii must satisfy 0 <= r_min < r_max");
  }
  if (slots.empty()) {
    invalid("scenario has no slots");
  }
  for (const auto & slot : slots) {
    if (!(slot.length > 0.0) || !(slot.width > 0.0)) {
      invalid("slot length and width must be positive");
    }
    for (const auto & c : slot.rect().corners()) {
      if (!bounds.contains(c)) {
        invalid("slot outside bounds");
      }
    }
  }
  if (occupancy.data.size() == m.cell_count()) {
    for (const auto & slot : slots) {
      if (!annulus_has_free_cell(*this, slot)) {
        invalid("spawn annulus has no free space");
      }
    }
  }
}

Scenario load_scenario(std::string_view bytes)
{
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error & e) {
    throw Error(
      ErrorCode::kParseError, "scenario parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }

  Scenario sc;
  sc.name = doc.value("name", std::string{});
  GridMeta meta;
  meta.resolution = number(doc, "resolution");
  const json & origin = field(doc, "origin");
  if (!origin.is_array() || origin.size() != 2 || !origin[0].is_number() || !origin[1].is_number()) {
    throw Error(ErrorCode::kParseError, "field 'origin' must be [x, y]");
  }
  meta.origin_x = origin[0].get<double>();
  meta.origin_y = origin[1].get<double>();
  meta.width = integer(doc, "width");
  meta.height = integer(doc, "height");
  sc.h_occ = number_or(doc, "h_occ", sc.h_occ);

  const json & elev = field(doc, "elevation");
  const std::string encoding = field(elev, "encoding").get<std::string>();
  if (encoding != "base64-f32le") {
    throw Error(ErrorCode::kParseError, "unsupported elevation encoding '" + encoding + "'");
  }
  sc.elevation.meta = meta;
  sc.elevation.data = decode_f32le(field(elev, "data").get<std::string>());

  const json & slots = field(doc, "slots");
  if (!slots.is_array()) {
    throw Error(ErrorCode::kParseError, "field 'slots' must be an array");
  }
  for (const auto & s : slots) {
    sc.slots.push_back(slot_from_json(s));
  }
  const json & b = field(doc, "bounds");
  sc.bounds = {number(b, "x0"), number(b, "y0"), number(b, "x1"), number(b, "y1")};
  if (doc.contains("spawn")) {
    const json & sp = doc.at("spawn");
    sc.spawn.r_min = number_or(sp, "r_min", sc.spawn.r_min);
    sc.spawn.r_max = number_or(sp, "r_max", sc.spawn.r_max);
  }

  // Structural checks first so derive() sees a consistent raster.
  Scenario shell = sc;
  shell.validate();
  sc.derive();
  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open scenario file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str());
}

std::string save_scenario(const Scenario & sc)
{
  const GridMeta & m = sc.elevation.meta;
  json doc;
  doc["name"] = sc.name;
  doc["resolution"] = m.resolution;
  doc["origin"] = {m.origin_x, m.origin_y};
  doc["width"] = m.width;
  doc["height"] = m.height;
  doc["h_occ"] = sc.h_occ;
  doc["elevation"] = {{"encoding", "base64-f32le"}, {"data", encode_f32le(sc.elevation.data)}};
  doc["slots"] = json::array();
  for (const auto & s : sc.slots) {
    doc["slots"].push_back(slot_to_json(s));
  }
  doc["bounds"] = {{"x0", sc.bounds.x0}, {"y0", sc.bounds.y0}, {"x1", sc.bounds.x1}, {"y1", sc.bounds.y1}};
  doc["spawn"] = {{"r_min", sc.spawn.r_min}, {"r_max", sc.spawn.r_max}};
  return doc.dump();
}

void stamp_box(ElevationMap & elev, const OrientedRect & rect, float height)
{
  for_each_cell_in(elev.meta, rect, [&](int ix, int iy) {
    float & h = elev.at(ix, iy);
    h = std::max(h, height);
  });
}

void stamp_mechanical_structure(ElevationMap & elev, const ParkingSlot & slot)
{
  const double half_l = 0.5 * slot.length;
  const double half_w = 0.5 * slot.width;
  constexpr double kRampLength = 1.0;
  constexpr double kPanelThickness = 0.15;
  constexpr double kBarrierDepth = 0.15;
  const GridMeta & m = elev.meta;
  const Vec2 axis{std::cos(slot.heading), std::sin(slot.heading)};
  const Vec2 normal{-axis.y, axis.x};
  constexpr double eps = 1e-9;

  for (int iy = 0; iy < m.height; ++iy) {
    for (int ix = 0; ix < m.width; ++ix) {
      const Vec2 d = m.cell_center(ix, iy) - slot.center();
      const double u = d.dot(axis);
      const double w = d.dot(normal);
      const double aw = std::abs(w);
      double h = elev.at(ix, iy);
      // Platform and entry ramp.
      if (aw <= half_w + eps && u >= -half_l - eps && u <= half_l + eps) {
        h = std::max(h, slot.ramp_rise);
      } else if (aw <= half_w + eps && u > half_l && u <= half_l + kRampLength) {
        h = std::max(h, slot.ramp_rise * (1.0 - (u - half_l) / kRampLength));
      }
      // Rear barrier: low enough for the overhang, tall for a 2D check.
      if (aw <= half_w + eps && u < -half_l - eps && u >= -half_l - kBarrierDepth - eps) {
        h = std::max(h, slot.barrier_height);
      }
      // Side panels along the slot and past its rear edge.
      if (aw > half_w + eps && aw <= half_w + kPanelThickness + eps && u >= -half_l - 0.8 && u <= half_l + eps) {
        h = std::max(h, slot.panel_height);
      }
      // Back wall closing the pit.
      if (aw <= half_w + kPanelThickness + eps && u < -half_l - 0.5 && u >= -half_l - 0.8) {
        h = std::max(h, slot.panel_height);
      }
      elev.at(ix, iy) = static_cast<float>(h);
    }
  }
}

namespace presets
{

Scenario open_standard()
{
  Scenario sc;
  sc.name = "open_standard";
  sc.elevation = ElevationMap(centered_meta(25.0, 25.0), 0.0f);
  sc.slots.push_back(ParkingSlot{});
  sc.bounds = {-20.0, -20.0, 20.0, 20.0};
  sc.derive();
  sc.validate();
  return sc;
}

Scenario mechanical()
{
  Scenario sc;
  sc.name = "mechanical";
  sc.elevation = ElevationMap(centered_meta(15.0, 15.0), 0.0f);
  ParkingSlot slot;
  slot.kind = SlotKind::kMechanical;
  slot.length = 4.3;
  slot.width = 2.1;
  stamp_mechanical_structure(sc.elevation, slot);
  sc.slots.push_back(slot);
  sc.bounds = {-10.0, -10.0, 10.0, 10.0};
  sc.derive();
  sc.validate();
  return sc;
}

Scenario garage()
{
  Scenario sc;
  sc.name = "garage";
  GridMeta m = centered_meta(15.0, 19.0);
  m.origin_x = -9.0;
  sc.elevation = ElevationMap(m, 0.0f);
  for (int i = 0; i < 6; ++i) {
    ParkingSlot s;
    s.cy = -6.25 + 2.5 * i;
    sc.slots.push_back(s);
  }
  stamp_box(sc.elevation, OrientedRect{{-3.2, 0.0}, 0.0, 0.2, 8.0}, 2.0f);
  sc.bounds = {-4.0, -14.0, 16.0, 14.0};
  sc.derive();
  sc.validate();
  return sc;
}

Scenario cluttered(std::uint64_t seed)
{
  Scenario sc = open_standard();
  sc.name = "cluttered";
  Rng rng(seed);
  int placed = 0;
  while (placed < 14) {
    const Vec2 c{rng.uniform(-4.0, 12.0), rng.uniform(-10.0, 10.0)};
    // Keep the slot itself and its immediate apron clear.
    if (std::abs(c.y) < 2.5 && c.x < 5.0) {
      continue;
    }
    stamp_box(sc.elevation, OrientedRect{c, 0.0, 0.4, 0.4}, 2.0f);
    ++placed;
  }
  sc.derive();
  sc.validate();
  return sc;
}

std::vector<std::string> names() { return {"open_standard", "mechanical", "garage", "cluttered"}; }

Scenario by_name(const std::string & name)
{
  if (name == "open_standard") {
    return open_standard();
  }
  if (name == "mechanical") {
    return mechanical();
  }
  if (name == "garage") {
    return garage();
  }
  if (name == "cluttered") {
    return cluttered();
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown scenario preset '" + name + "'");
}

}  // namespace presets

}  // namespace reap_sim
