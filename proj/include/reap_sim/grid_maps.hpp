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

#ifndef REAP_SIM__GRID_MAPS_HPP_
#define REAP_SIM__GRID_MAPS_HPP_

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "reap_sim/common.hpp"
#include "reap_sim/slot.hpp"

namespace reap_sim
{

struct CellIndex
{
  int ix{0};
  int iy{0};
  bool operator==(const CellIndex &) const = default;
};

/// Raster placement. (origin_x, origin_y) is the world position of the
/// center of cell (0, 0); cells are stored row-major with ix fastest.
struct GridMeta
{
  double origin_x{0.0};
  double origin_y{0.0};
  double resolution{0.05};
  int width{1};
  int height{1};

  std::size_t cell_count() const
  {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  std::size_t index(int ix, int iy) const
  {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(ix);
  }

  bool in_grid(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < width && iy < height; }

  Vec2 cell_center(int ix, int iy) const
  {
    return {origin_x + ix * resolution, origin_y + iy * resolution};
  }

  /// Cell whose square contains p, or nullopt when p is outside the raster.
  std::optional<CellIndex> world_to_cell(const Vec2 & p) const;

  /// True when p lies inside the raster extent (cell squares, edges included).
  bool contains(const Vec2 & p) const;

  /// Throws invalid-parameter unless resolution > 0 and width, height >= 1.
  void validate() const;

  bool operator==(const GridMeta &) const = default;
};

template <typename T>
struct Grid
{
  GridMeta meta;
  std::vector<T> data;

  Grid() = default;
  explicit Grid(const GridMeta & m, T fill = T{}) : meta(m), data(m.cell_count(), fill) {}

  T & at(int ix, int iy) { return data[meta.index(ix, iy)]; }
  const T & at(int ix, int iy) const { return data[meta.index(ix, iy)]; }

  bool operator==(const Grid &) const = default;
};

using OccupancyGrid = Grid<std::uint8_t>;
using ElevationMap = Grid<float>;
using DistanceField = Grid<double>;

struct TsdfField : Grid<double>
{
  double d0{1.0};
  double tau{0.5};
};

struct TargetHeatmap : Grid<double>
{
  int slot_id{-1};
};

/// Cells strictly higher than h_thresh are occupied.
OccupancyGrid occupancy_from_elevation(const ElevationMap & elev, double h_thresh);

/// Distance reported everywhere when no cell is occupied.
inline double edt_sentinel(const GridMeta & meta)
{
  return meta.resolution * static_cast<double>(meta.width + meta.height);
}

/// Exact Euclidean distance (meters) from each cell center to the nearest
/// occupied cell center. Separable lower-envelope transform over squared
/// distances; integer-exact before the final square root.
DistanceField euclidean_distance_transform(const OccupancyGrid & occ);

inline double tsdf_value(double distance, double d0, double tau)
{
  return std::max(0.0, std::pow(std::min(distance, d0) / d0, tau));
}

TsdfField tsdf_from_distance(const DistanceField & dist, double d0, double tau);

/// Bilinear interpolation between cell centers. Points within half a cell of
/// the border clamp to the edge cells; points outside the raster throw
/// out-of-map.
double sample_bilinear(const Grid<double> & grid, const Vec2 & p);

struct GateParams
{
  double gamma{0.5};
  double sigma_length_fraction{0.25};
  double sigma_width_fraction{0.25};
};

/// Gated 2D Gaussian of a slot evaluated at a world point. The entry side
/// (u >= 0 along the slot axis) keeps the full Gaussian; the closed side is
/// narrowed by gamma.
double heatmap_value(const ParkingSlot & slot, const GateParams & gate, const Vec2 & p);

TargetHeatmap target_heatmap(
  const ParkingSlot & slot, const GridMeta & meta, const GateParams & gate = {},
  int slot_id = -1);

struct PerturbLimits
{
  double dx_max{0.2};
  double dtheta_max{3.0 * kPi / 180.0};
};

ParkingSlot perturb_slot(const ParkingSlot & slot, Rng & rng, const PerturbLimits & limits = {});

/// Portable graymap (P5). Values are clamped to [0, 1] and scaled to the
/// 8- or 16-bit range. Rows are written top (max y) first.
void write_pgm(std::ostream & out, const Grid<double> & grid, int bits = 8);

}  // namespace reap_sim

#endif  // REAP_SIM__GRID_MAPS_HPP_
