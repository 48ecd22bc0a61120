#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "celldim/shadowing.hpp"
#include "celldim/units.hpp"

namespace celldim {

/// Observation rectangle [0, width] x [0, height]. Averages only use cells
/// whose station lies at least `guard_km` inside the boundary.
struct Window {
  double width_km = 1.0;
  double height_km = 1.0;
  double guard_km = 0.0;

  void validate() const;
  double area_km2() const { return width_km * height_km; }
  bool contains(Point p) const;
  bool in_interior(Point p) const;
};

struct Station {
  Point position;
  double power_dbm = 60.0;
  int zone_tag = 0;
};

struct Deployment {
  std::vector<Station> stations;
  Window window;
  double intensity_per_km2 = 0.0;
  std::uint64_t seed = 0;
};

/// Cell-centred lattice covering the window; every node carries the same
/// area weight dx * dy, so the weights add up to the window area.
struct EvalGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx_km = 0.0;
  double dy_km = 0.0;

  static EvalGrid covering(Window const& window, double resolution_km);

  std::size_t size() const { return nx * ny; }
  Point node(std::size_t index) const {
    return {(static_cast<double>(index % nx) + 0.5) * dx_km,
            (static_cast<double>(index / nx) + 0.5) * dy_km};
  }
  double node_weight_km2() const { return dx_km * dy_km; }
  double total_area_km2() const { return node_weight_km2() * static_cast<double>(size()); }
  LatticeShape lattice() const { return {nx, ny, dx_km, dy_km}; }
};

/// Strongest-signal partition of the grid nodes.
struct CellPartition {
  std::vector<std::uint32_t> serving;               // per node
  std::vector<std::vector<std::uint32_t>> nodes;    // per cell
  std::vector<double> surface_km2;                  // per cell

  std::size_t cell_count() const { return nodes.size(); }
};

/// Default lattice step: 50 m at the urban density 1.15 / km^2, scaled with
/// the typical inter-site distance 1/sqrt(lambda).
double default_resolution_km(double intensity_per_km2);

/// Default guard margin 3 / sqrt(lambda).
double default_guard_km(double intensity_per_km2);

/// Homogeneous Poisson deployment. With `retry_on_empty`, an empty draw is
/// redrawn from the next substream; otherwise it throws.
Deployment sample_ppp(double intensity_per_km2, Window const& window, std::uint64_t seed,
                      double power_dbm = 60.0, bool retry_on_empty = true);

Deployment place_deterministic(std::span<Point const> positions, Window const& window,
                               double power_dbm = 60.0);

/// Indices of cells whose station is in the guarded interior. Throws when
/// none is, since a larger window is needed.
std::vector<std::size_t> interior_cells(Deployment const& deployment);

/// Groups per-node serving indices into per-cell node lists and surfaces.
CellPartition make_partition(std::vector<std::uint32_t> serving, std::size_t cell_count,
                             double node_weight_km2);

}  // namespace celldim
