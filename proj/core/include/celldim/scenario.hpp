#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "celldim/mean_cell.hpp"
#include "celldim/network.hpp"
#include "celldim/performance.hpp"
#include "celldim/propagation.hpp"
#include "celldim/radio.hpp"
#include "celldim/scaling.hpp"

namespace celldim {

/// Raised for malformed, unknown or out-of-range scenario keys.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { sweep, scale_check, composite, dimension };

struct GeometryConfig {
  double intensity_per_km2 = 1.15;
  std::optional<double> spacing_km;      // overrides intensity with 1 / D^2
  std::optional<double> window_width_km;
  std::optional<double> window_height_km;
  std::optional<double> window_spacings;  // window side in units of 1/sqrt(lambda)
  std::optional<double> guard_km;
  std::optional<double> resolution_m;
  std::uint64_t seed = 0;
  std::vector<Point> deterministic_positions;
  std::size_t realizations = 1;

  double intensity() const;
};

/// Physical description of one homogeneous network and how to compute it.
struct Setup {
  GeometryConfig geometry;
  PropagationModel propagation;
  RateModel rate;
  std::optional<double> noise_dbm;  // fixed noise; otherwise from W and NF
  NetworkOptions network;

  double noise_w() const;
  double noise_w(double bandwidth_hz) const;
  HomogeneousSetup homogeneous() const;
};

/// Networks of a setup: the deterministic deployment when positions are
/// given, otherwise `geometry.realizations` Poisson draws.
std::vector<Network> realize(Setup const& setup);

struct TrafficConfig {
  std::vector<double> rho_bar_bps;          // per-cell demand axis
  std::vector<double> rho_bps_per_km2;      // surface density axis
};

struct ScalingConfig {
  std::vector<double> alphas{2.0, 5.0, 8.0};
  bool fresh_seed_mode = false;
  double rho_bps_per_km2 = 6e5;
};

struct ZoneConfig {
  std::string name;
  std::optional<CostHataZone> cost_hata;
  std::optional<double> k_per_km;
  std::optional<double> beta;
  double spacing_km = 1.0;
};

struct CompositeConfig {
  bool per_zone_beta = false;
  bool shared_seeds = false;
  double kd_tolerance = 0.1;
};

struct DimensionVariant {
  std::string name;
  Setup setup;
};

struct DimensionConfig {
  double target_bps = 5e6;
  double w_min_hz = 1e6;
  double w_max_hz = 100e6;
  double tolerance_hz = 0.1e6;
  std::size_t scan_points = 8;
  std::vector<double> rho_bar_bps;
  std::vector<DimensionVariant> variants;  // empty: the base setup only
};

struct Scenario {
  Experiment experiment = Experiment::sweep;
  bool experiment_declared = false;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  Setup setup;
  TrafficConfig traffic;
  SolverConfig solver;
  MeanCellMcConfig meancell;
  bool meancell_analytic = false;  // add the scalar mean-cell prediction to sweeps
  ScalingConfig scaling;
  std::vector<ZoneConfig> zones;
  CompositeConfig composite;
  DimensionConfig dimension;
};

/// Parses a JSON scenario. Nested objects and literal dotted keys are
/// equivalent ("pathloss": {"K": 1} == "pathloss.K": 1). Any key that is not
/// recognised raises ConfigError before anything is computed.
Scenario parse_scenario(std::string const& text, std::optional<std::uint64_t> seed_override = {},
                        std::optional<unsigned> workers_override = {});

Scenario load_scenario(std::string const& path, std::optional<std::uint64_t> seed_override = {},
                       std::optional<unsigned> workers_override = {});

char const* to_string(Experiment e);

}  // namespace celldim
