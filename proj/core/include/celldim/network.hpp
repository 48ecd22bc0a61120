#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "celldim/coverage.hpp"
#include "celldim/geometry.hpp"
#include "celldim/propagation.hpp"

namespace celldim {

/// Deployment, grid and propagation with a realized shadowing field: the
/// input bundle every solve starts from.
struct Scene {
  Deployment deployment;
  EvalGrid grid;
  PropagationModel propagation;
  std::shared_ptr<ShadowField const> shadow;
};

struct NetworkOptions {
  GainStorage storage = GainStorage::automatic;
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  unsigned workers = 1;
};

/// A scene with its received-power table, strongest-signal partition and
/// interior cell set. Gains are shared, so copies are cheap.
struct Network {
  Scene scene;
  std::shared_ptr<GainTable const> gains;
  CellPartition partition;
  std::vector<std::size_t> interior;

  std::size_t cell_count() const { return partition.cell_count(); }
};

/// Realizes the shadowing field for `deployment` on `grid` from the model's
/// shadowing configuration.
Scene make_scene(Deployment deployment, EvalGrid grid, PropagationModel propagation);

Network build_network(Scene scene, NetworkOptions const& options = {});

/// Homogeneous Poisson network description; window and grid default to the
/// density-scaled values when left at zero.
struct HomogeneousSetup {
  double intensity_per_km2 = 1.15;
  double window_width_km = 0.0;
  double window_height_km = 0.0;
  double guard_km = -1.0;  // negative: 3 / sqrt(lambda)
  double resolution_km = 0.0;
  double power_dbm = 60.0;
  PropagationModel propagation;
  std::uint64_t seed = 1;
  std::size_t realizations = 1;
};

/// One network per realization; realization i uses deployment seed
/// mix_seed(seed, i) and shadowing seed mix_seed(shadowing.seed, i).
std::vector<Network> realize_networks(HomogeneousSetup const& setup, NetworkOptions const& options = {});

}  // namespace celldim
