#include "celldim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "celldim/parallel.hpp"

namespace celldim {

GainTable::GainTable(Deployment const& deployment, EvalGrid const& grid,
                     PropagationModel const& model, std::shared_ptr<ShadowField const> shadow,
                     GainStorage storage, unsigned workers, std::size_t budget_bytes)
    : grid_(grid), pathloss_(model.pathloss), antenna_(model.antenna), shadow_(std::move(shadow)) {
  if (deployment.stations.empty()) throw std::invalid_argument("GainTable: empty deployment");
  if (!shadow_) throw std::invalid_argument("GainTable: shadow field required");
  if (shadow_->station_count() != deployment.stations.size() ||
      (shadow_->mode() == ShadowingMode::correlated && shadow_->node_count() != grid.size())) {
    throw std::invalid_argument("GainTable: shadow field does not match deployment and grid");
  }
  positions_.reserve(deployment.stations.size());
  power_w_.reserve(deployment.stations.size());
  for (Station const& s : deployment.stations) {
    positions_.push_back(s.position);
    power_w_.push_back(dbm_to_watt(s.power_dbm));
  }

  std::size_t const entries = grid_.size() * positions_.size();
  bool const fits = entries * sizeof(double) <= budget_bytes;
  if (storage == GainStorage::materialized || (storage == GainStorage::automatic && fits)) {
    table_.resize(entries);
    std::size_t const m = positions_.size();
    parallel_for(grid_.size(), workers, [&](std::size_t node) {
      fill_row(node, std::span<double>(table_.data() + node * m, m));
    });
  }
}

void GainTable::fill_row(std::size_t node, std::span<double> out) const {
  Point const y = grid_.node(node);
  double const k = pathloss_.k_per_km;
  double const beta = pathloss_.beta;
  double const dmin = pathloss_.min_distance_km;
  bool const omni = antenna_.mode == AntennaMode::omni;
  for (std::size_t s = 0; s < positions_.size(); ++s) {
    double const dx = y.x_km - positions_[s].x_km;
    double const dy = y.y_km - positions_[s].y_km;
    double const d = std::max(std::sqrt(dx * dx + dy * dy), dmin);
    double g = power_w_[s] * shadow_->gain(s, node) / std::pow(k * d, beta);
    if (!omni) g *= db_to_linear(antenna_gain_db(antenna_, positions_[s], y));
    out[s] = g;
  }
}

std::span<double const> GainTable::row(std::size_t node, std::span<double> scratch) const {
  std::size_t const m = positions_.size();
  if (materialized()) return {table_.data() + node * m, m};
  if (scratch.size() < m) throw std::invalid_argument("GainTable::row: scratch too small");
  fill_row(node, scratch.first(m));
  return scratch.first(m);
}

double GainTable::gain(std::size_t node, std::size_t station) const {
  if (materialized()) return table_[node * positions_.size() + station];
  std::vector<double> scratch(positions_.size());
  fill_row(node, scratch);
  return scratch[station];
}

CellPartition assign_cells(GainTable const& gains, LinkParams const& link, unsigned workers) {
  std::size_t const nodes = gains.node_count();
  std::size_t const m = gains.station_count();
  std::vector<std::uint32_t> serving(nodes);
  double const pilot = link.pilot_for_selection ? link.pilot_fraction : 1.0;
  // One scratch row per block; parallel_for blocks are contiguous.
  unsigned const w = std::max(1u, workers);
  std::size_t const block = (nodes + w - 1) / w;
  parallel_for(w, w, [&](std::size_t b) {
    std::vector<double> scratch(gains.materialized() ? 0 : m);
    std::size_t const end = std::min(nodes, (b + 1) * block);
    for (std::size_t n = b * block; n < end; ++n) {
      auto const row = gains.row(n, scratch);
      std::size_t best = 0;
      double best_power = pilot * row[0];
      for (std::size_t s = 1; s < m; ++s) {
        double const p = pilot * row[s];
        if (p > best_power) {
          best_power = p;
          best = s;
        }
      }
      serving[n] = static_cast<std::uint32_t>(best);
    }
  });
  return make_partition(std::move(serving), m, gains.grid().node_weight_km2());
}

CellPartition assign_cells(Deployment const& deployment, PropagationModel const& model,
                           std::shared_ptr<ShadowField const> shadow, EvalGrid const& grid,
                           unsigned workers) {
  GainTable table(deployment, grid, model, std::move(shadow), GainStorage::on_the_fly, workers);
  return assign_cells(table, model.link, workers);
}

}  // namespace celldim
