#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "celldim/network.hpp"
#include "celldim/performance.hpp"
#include "celldim/propagation.hpp"
#include "celldim/radio.hpp"

namespace celldim {

/// Dilation of a network by alpha > 0.
struct ScalingTransform {
  double alpha = 1.0;
  explicit ScalingTransform(double a);
};

struct RescaledBundle {
  Scene scene;
  double rho_surface = 0.0;
};

/// Positions, window, grid steps and every length in the propagation model
/// are multiplied by alpha; K is divided by alpha and the surface traffic by
/// alpha^2. Powers, beta and the shadowing values (node for node) are kept.
RescaledBundle rescale(Scene const& scene, double rho_surface, ScalingTransform const& transform);

/// Same dilation applied to a Poisson network description; used to draw a
/// statistically equivalent network with fresh seeds.
HomogeneousSetup rescale(HomogeneousSetup setup, ScalingTransform const& transform);

PropagationModel dilate_propagation(PropagationModel model, double alpha);

/// Largest relative per-cell deviation between a network and its dilation.
struct ScalingDeviation {
  double alpha = 1.0;
  double theta = 0.0;
  double rho = 0.0;
  double rho_c = 0.0;
  double r = 0.0;
  double n_users = 0.0;
  std::size_t cells = 0;
  bool converged = true;
};

/// |a - b| / max(|a|, |b|); 0 when both are equal (including infinities).
double relative_deviation(double a, double b);

/// Compares two solved networks cell by cell over `cells`.
ScalingDeviation compare_solutions(LoadSolution const& original, LoadSolution const& rescaled,
                                   std::span<std::size_t const> cells);

ScalingDeviation verify_scaling(Scene const& scene, double rho_surface, double alpha, RateModel const& rate,
                                double noise_w, SolverConfig const& solver, NetworkOptions const& options = {});

/// Overload reusing an already built network for the original side.
ScalingDeviation verify_scaling(Network const& original, LoadSolution const& original_solution,
                                double rho_surface, double alpha, RateModel const& rate, double noise_w,
                                SolverConfig const& solver, NetworkOptions const& options = {});

/// One homogeneous zone of a piecewise homogeneous country.
struct ZoneSpec {
  std::string name;
  std::optional<CostHataZone> cost_hata;
  double k_per_km = 0.0;
  double beta = 0.0;
  double spacing_km = 1.0;

  double intensity_per_km2() const { return 1.0 / (spacing_km * spacing_km); }
};

/// ZoneSpec from COST-Hata constants: K, beta from A, B.
ZoneSpec zone_from_cost_hata(std::string name, CostHataZone const& zone, double spacing_km);

/// Shared settings for all zones of a composite run.
struct CompositeScenario {
  std::vector<ZoneSpec> zones;
  PropagationModel propagation;  // pathloss K/beta replaced per zone
  RateModel rate;
  double noise_w = 0.0;
  double power_dbm = 60.0;
  SolverConfig solver;
  NetworkOptions network;
  std::vector<double> rho_bar;  // per-cell demand grid, bit/s
  /// Window side in units of the zone spacing.
  double window_spacings = 20.0;
  /// Grid step in units of the zone spacing; 0 keeps the density-scaled default.
  double resolution_spacings = 0.0;
  std::size_t realizations = 1;
  std::uint64_t seed = 1;
  /// Same seeds for every zone (exact dilation) instead of fresh ones.
  bool shared_seeds = false;
  /// Use each zone's own beta instead of the first zone's.
  bool per_zone_beta = false;
  /// Allowed relative deviation of K * D from the zone average.
  double kd_tolerance = 0.1;
};

struct ZoneCurve {
  std::string name;
  double k_per_km = 0.0;
  double beta = 0.0;
  double spacing_km = 0.0;
  double kd_product = 0.0;
  std::vector<CurvePoint> curve;
};

struct CompositeResult {
  std::vector<ZoneCurve> zones;
  std::vector<std::string> warnings;
};

/// Largest relative deviation of K_i * D_i from their mean.
double kd_spread(std::span<ZoneSpec const> zones);

CompositeResult build_composite(CompositeScenario const& scenario);

struct HomogeneityGap {
  double theta = 0.0;
  double r = 0.0;
  std::vector<double> theta_per_point;
  std::vector<double> r_per_point;
};

/// Relative spread (max - min) / mean across zones at each traffic point,
/// and its maximum over the traffic grid.
HomogeneityGap qos_homogeneity(std::span<ZoneCurve const> zones);

}  // namespace celldim
