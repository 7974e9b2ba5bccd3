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

#include "reap_sim/grid_maps.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace reap_sim
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional squared-distance transform over the lower envelope of
// parabolas rooted at finite samples. `f` holds squared distances (or +inf for
// no site); the result is written to `d`. Scratch buffers must hold n + 1.
void lower_envelope_1d(
  const double * f, int n, double * d, std::vector<int> & v, std::vector<double> & z)
{
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) {
      continue;
    }
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    const double fq = f[q] + static_cast<double>(q) * q;
    double s = 0.0;
    while (true) {
      const int p = v[k];
      s = (fq - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d, d + n, kInf);
    return;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) {
      ++k;
    }
    const double dq = static_cast<double>(q - v[k]);
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

std::optional<CellIndex> GridMeta::world_to_cell(const Vec2 & p) const
{
  const int ix = static_cast<int>(std::floor((p.x - origin_x) / resolution + 0.5));
  const int iy = static_cast<int>(std::floor((p.y - origin_y) / resolution + 0.5));
  if (!in_grid(ix, iy)) {
    return std::nullopt;
  }
  return CellIndex{ix, iy};
}

bool GridMeta::contains(const Vec2 & p) const
{
  const double fx = (p.x - origin_x) / resolution;
  const double fy = (p.y - origin_y) / resolution;
  return fx >= -0.5 && fy >= -0.5 && fx <= width - 0.5 && fy <= height - 0.5;
}

void GridMeta::validate() const
{
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::kInvalidParameter, "grid resolution must be positive");
  }
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidParameter, "grid width and height must be at least 1");
  }
  if (!std::isfinite(origin_x) || !std::isfinite(origin_y)) {
    throw Error(ErrorCode::kInvalidParameter, "grid origin must be finite");
  }
}

OccupancyGrid occupancy_from_elevation(const ElevationMap & elev, double h_thresh)
{
  OccupancyGrid occ(elev.meta, 0);
  for (std::size_t i = 0; i < elev.data.size(); ++i) {
    occ.data[i] = elev.data[i] > h_thresh ? 1 : 0;
  }
  return occ;
}

DistanceField euclidean_distance_transform(const OccupancyGrid & occ)
{
  const GridMeta & meta = occ.meta;
  const int w = meta.width;
  const int h = meta.height;
  DistanceField out(meta, 0.0);

  bool any = false;
  for (auto c : occ.data) {
    any = any || c != 0;
  }
  if (!any) {
    std::fill(out.data.begin(), out.data.end(), edt_sentinel(meta));
    return out;
  }

  const int n = std::max(w, h);
  std::vector<double> f(n);
  std::vector<double> d(n);
  std::vector<int> v(n + 1);
  std::vector<double> z(n + 2);

  // Columns: squared distance to nearest occupied cell in the same column.
  std::vector<double> sq(meta.cell_count());
  for (int ix = 0; ix < w; ++ix) {
    for (int iy = 0; iy < h; ++iy) {
      f[iy] = occ.at(ix, iy) ? 0.0 : kInf;
    }
    lower_envelope_1d(f.data(), h, d.data(), v, z);
    for (int iy = 0; iy < h; ++iy) {
      sq[meta.index(ix, iy)] = d[iy];
    }
  }
  // Rows: combine column results.
  for (int iy = 0; iy < h; ++iy) {
    lower_envelope_1d(&sq[meta.index(0, iy)], w, d.data(), v, z);
    for (int ix = 0; ix < w; ++ix) {
      out.at(ix, iy) = std::sqrt(d[ix]) * meta.resolution;
    }
  }
  return out;
}

TsdfField tsdf_from_distance(const DistanceField & dist, double d0, double tau)
{
  if (!(d0 > 0.0) || !(tau > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "tsdf requires d0 > 0 and tau > 0");
  }
  TsdfField out;
  out.meta = dist.meta;
  out.d0 = d0;
  out.tau = tau;
  out.data.resize(dist.data.size());
  for (std::size_t i = 0; i < dist.data.size(); ++i) {
    out.data[i] = tsdf_value(dist.data[i], d0, tau);
  }
  return out;
}

double sample_bilinear(const Grid<double> & grid, const Vec2 & p)
{
  const GridMeta & m = grid.meta;
  if (!m.contains(p)) {
    throw Error(ErrorCode::kOutOfMap, "sample point outside map");
  }
  const double fx = std::clamp((p.x - m.origin_x) / m.resolution, 0.0, m.width - 1.0);
  const double fy = std::clamp((p.y - m.origin_y) / m.resolution, 0.0, m.height - 1.0);
  const int x0 = std::min(static_cast<int>(fx), std::max(m.width - 2, 0));
  const int y0 = std::min(static_cast<int>(fy), std::max(m.height - 2, 0));
  const int x1 = std::min(x0 + 1, m.width - 1);
  const int y1 = std::min(y0 + 1, m.height - 1);
  const double tx = fx - x0;
  const double ty = fy - y0;
  const double top = grid.at(x0, y0) * (1.0 - tx) + grid.at(x1, y0) * tx;
  const double bot = grid.at(x0, y1) * (1.0 - tx) + grid.at(x1, y1) * tx;
  return top * (1.0 - ty) + bot * ty;
}

double heatmap_value(const ParkingSlot & slot, const GateParams & gate, const Vec2 & p)
{
  const double c = std::cos(slot.heading);
  const double s = std::sin(slot.heading);
  const double dx = p.x - slot.cx;
  const double dy = p.y - slot.cy;
  const double u = c * dx + s * dy;
  const double w = -s * dx + c * dy;
  const double su = slot.length * gate.sigma_length_fraction;
  const double sw = slot.width * gate.sigma_width_fraction;
  double e = u * u / (2.0 * su * su) + w * w / (2.0 * sw * sw);
  if (u < 0.0) {
    const double sg = su * gate.gamma;
    e += u * u / (2.0 * sg * sg);
  }
  return std::exp(-e);
}

TargetHeatmap target_heatmap(
  const ParkingSlot & slot, const GridMeta & meta, const GateParams & gate, int slot_id)
{
  require_valid(slot);
  TargetHeatmap out;
  out.meta = meta;
  out.slot_id = slot_id;
  out.data.resize(meta.cell_count());
  for (int iy = 0; iy < meta.height; ++iy) {
    for (int ix = 0; ix < meta.width; ++ix) {
      out.at(ix, iy) = heatmap_value(slot, gate, meta.cell_center(ix, iy));
    }
  }
  return out;
}

ParkingSlot perturb_slot(const ParkingSlot & slot, Rng & rng, const PerturbLimits & limits)
{
  ParkingSlot out = slot;
  out.cx += rng.uniform(-limits.dx_max, limits.dx_max);
  out.cy += rng.uniform(-limits.dx_max, limits.dx_max);
  out.heading = normalize_angle(slot.heading + rng.uniform(-limits.dtheta_max, limits.dtheta_max));
  return out;
}

void write_pgm(std::ostream & out, const Grid<double> & grid, int bits)
{
  if (bits != 8 && bits != 16) {
    throw Error(ErrorCode::kInvalidParameter, "pgm depth must be 8 or 16 bits");
  }
  const int maxval = bits == 8 ? 255 : 65535;
  out << "P5\n" << grid.meta.width << ' ' << grid.meta.height << '\n' << maxval << '\n';
  for (int iy = grid.meta.height - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.meta.width; ++ix) {
      const double v = std::clamp(grid.at(ix, iy), 0.0, 1.0);
      const auto q = static_cast<unsigned>(std::lround(v * maxval));
      if (bits == 16) {
        out.put(static_cast<char>((q >> 8) & 0xff));
      }
      out.put(static_cast<char>(q & 0xff));
    }
  }
}

}  // namespace reap_sim
