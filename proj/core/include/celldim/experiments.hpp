#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "celldim/performance.hpp"
#include "celldim/scaling.hpp"
#include "celldim/scenario.hpp"

namespace celldim {

struct SweepRecord {
  double traffic = 0.0;      // grid value as requested, in the units of the axis
  double rho_surface = 0.0;  // bit/s/km^2 used for the solve
  CurvePoint point;
  std::optional<MeanCellAnalytic> analytic;
};

struct SweepResult {
  TrafficAxis axis = TrafficAxis::per_cell;
  std::size_t realizations = 0;
  std::size_t interior_cells = 0;
  double mean_cell_surface_km2 = 0.0;
  std::vector<SweepRecord> rows;

  bool all_converged() const;
};

/// Mean-cell curve over the scenario's traffic grid.
SweepResult run_sweep(Scenario const& scenario);
SweepResult run_sweep(Scenario const& scenario, std::span<Network const> networks);

struct DimensionRecord {
  std::string variant;
  double rho_bar_bps = 0.0;
  std::optional<double> min_bandwidth_hz;  // empty when infeasible
  double r_bar_bps = 0.0;                  // at the reported width, or at W_max
  bool non_monotone = false;               // scan saw r_bar decrease in W
  bool converged = true;
  int evaluations = 0;

  bool feasible() const { return min_bandwidth_hz.has_value(); }
};

/// Mean user throughput r_bar(W) of a fixed set of networks.
class ThroughputProbe {
 public:
  ThroughputProbe(std::vector<Network> networks, Setup const& setup, SolverConfig solver);
  CurvePoint evaluate(double bandwidth_hz, double rho_bar_bps) const;

 private:
  std::vector<Network> networks_;
  Setup setup_;
  SolverConfig solver_;
};

/// Smallest W on the lattice w_min + k * tolerance (capped at w_max) with
/// r_bar(W) >= target, for one per-cell traffic value.
DimensionRecord min_bandwidth(ThroughputProbe const& probe, DimensionConfig const& config, double rho_bar_bps);

/// W(rho_bar) table for every variant (or the base setup alone).
std::vector<DimensionRecord> dimension_bandwidth(Scenario const& scenario);

struct ScaleCheckResult {
  bool fresh_seed_mode = false;
  double rho_bps_per_km2 = 0.0;
  std::vector<ScalingDeviation> rows;
};

/// Exact mode: per-cell comparison of one network with its dilations.
/// Fresh-seed mode: mean-cell comparison with independently drawn dilated
/// networks on the per-cell traffic grid.
ScaleCheckResult run_scale_check(Scenario const& scenario);

struct CompositeRun {
  CompositeResult result;
  std::optional<HomogeneityGap> gap;
  std::vector<double> rho_bar_bps;
};

CompositeScenario composite_from(Scenario const& scenario);
CompositeRun run_composite(Scenario const& scenario);

}  // namespace celldim
