#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "celldim/geometry.hpp"
#include "celldim/propagation.hpp"
#include "celldim/shadowing.hpp"

namespace celldim {

enum class GainStorage {
  automatic,     // materialize when it fits in the memory budget
  materialized,  // nodes x stations table in memory
  on_the_fly,    // recompute each row on demand
};

/// Received power 1/L_X(y), in watts, of every station at every grid node,
/// at full transmit power. Rows are contiguous per node.
class GainTable {
 public:
  GainTable(Deployment const& deployment, EvalGrid const& grid, PropagationModel const& model,
            std::shared_ptr<ShadowField const> shadow, GainStorage storage = GainStorage::automatic,
            unsigned workers = 1, std::size_t budget_bytes = std::size_t{1} << 30);

  std::size_t node_count() const { return grid_.size(); }
  std::size_t station_count() const { return positions_.size(); }
  bool materialized() const { return !table_.empty(); }

  /// All station gains at `node`. `scratch` must hold station_count() values;
  /// it is only written in on-the-fly mode.
  std::span<double const> row(std::size_t node, std::span<double> scratch) const;
  double gain(std::size_t node, std::size_t station) const;

  EvalGrid const& grid() const { return grid_; }

 private:
  void fill_row(std::size_t node, std::span<double> out) const;

  EvalGrid grid_;
  PathLossParams pathloss_;
  AntennaConfig antenna_;
  std::vector<Point> positions_;
  std::vector<double> power_w_;
  std::shared_ptr<ShadowField const> shadow_;
  std::vector<double> table_;
};

/// Each node goes to the station with the largest (pilot) received power;
/// ties go to the lowest station index.
CellPartition assign_cells(GainTable const& gains, LinkParams const& link, unsigned workers = 1);

/// Convenience overload that evaluates gains on the fly.
CellPartition assign_cells(Deployment const& deployment, PropagationModel const& model,
                           std::shared_ptr<ShadowField const> shadow, EvalGrid const& grid,
                           unsigned workers = 1);

}  // namespace celldim
