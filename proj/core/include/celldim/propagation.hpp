#pragma once

#include <array>

#include "celldim/shadowing.hpp"
#include "celldim/units.hpp"

namespace celldim {

/// Distance path loss l(d) = (K d)^beta.
///
/// `min_distance_km` is the near-field clamp: below it the loss is held at
/// l(min_distance_km). It is a length, so it dilates with the network.
struct PathLossParams {
  double k_per_km = 7117.0;
  double beta = 3.8;
  double min_distance_km = 0.01;

  void validate() const;
};

/// COST-Hata style loss 10 log10 l(d) = A + B log10(d), d in km.
struct CostHataZone {
  double a_db = 133.1;
  double b_db_per_decade = 33.8;
};

enum class AntennaMode { omni, trisector };

/// Parametric three-sector pattern: quadratic roll-off in azimuth and
/// elevation, each capped, then the sum capped by the front-to-back limit.
/// A site radiates through its best sector towards any location.
struct AntennaConfig {
  AntennaMode mode = AntennaMode::omni;
  double az_beamwidth_deg = 70.0;
  double el_beamwidth_deg = 10.0;
  double front_back_limit_db = 25.0;
  double side_lobe_limit_db = 20.0;
  double max_gain_dbi = 14.0;
  double downtilt_deg = 6.0;
  double bs_height_m = 30.0;
  double ue_height_m = 1.5;
  std::array<double, 3> sector_azimuths_deg{0.0, 120.0, 240.0};

  void validate() const;
};

struct LinkParams {
  double tx_power_dbm = 60.0;
  double pilot_fraction = 0.1;
  double noise_figure_db = 11.0;
  /// Cell selection compares pilot powers (pilot_fraction * P) when set.
  bool pilot_for_selection = true;

  void validate() const;
};

/// Everything that defines the inverse received power L_X(y), except the
/// realized shadowing field, which is bound to a deployment and a grid.
struct PropagationModel {
  PathLossParams pathloss;
  AntennaConfig antenna;
  LinkParams link;
  ShadowingConfig shadowing;

  void validate() const;
};

/// Linear loss factor (K d)^beta with the near-field clamp applied.
double path_loss(PathLossParams const& params, double distance_km);

/// K = 10^(A/B), beta = B/10. Throws for B <= 20 (beta must exceed 2).
PathLossParams params_from_cost_hata(CostHataZone const& zone);

/// K0 (f/f0)^(2/beta).
double scale_k_to_frequency(double k0_per_km, double f0_ghz, double f_ghz, double beta);

/// Thermal noise -174 dBm/Hz over the band plus the receiver noise figure.
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

/// Antenna gain in dB from a site at `site` towards `location`.
double antenna_gain_db(AntennaConfig const& antenna, Point site, Point location);

/// Received power 1/L in watts for a station of power `power_dbm`.
/// `shadow_gain` is the linear shadowing factor S(y - X).
double received_power_w(PropagationModel const& model, Point site, double power_dbm,
                        Point location, double shadow_gain);

/// L_X(y) = l(y - X) / (P G S).
double propagation_loss(PropagationModel const& model, Point site, double power_dbm,
                        Point location, double shadow_gain);

}  // namespace celldim
