#include "celldim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace celldim {
namespace {

void require(bool ok, char const* what) {
  if (!ok) throw std::invalid_argument(what);
}

double wrap_degrees(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w < 0.0) w += 360.0;
  return w - 180.0;
}

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

void PathLossParams::validate() const {
  require(std::isfinite(k_per_km) && k_per_km > 0.0, "pathloss: K must be positive");
  require(std::isfinite(beta) && beta > 2.0, "pathloss: beta must exceed 2");
  require(std::isfinite(min_distance_km) && min_distance_km >= 0.0,
          "pathloss: min distance must be non-negative");
}

void AntennaConfig::validate() const {
  require(az_beamwidth_deg > 0.0 && el_beamwidth_deg > 0.0,
          "antenna: beamwidths must be positive");
  require(std::isfinite(front_back_limit_db) && std::isfinite(side_lobe_limit_db) &&
              std::isfinite(max_gain_dbi) && std::isfinite(downtilt_deg),
          "antenna: gains must be finite");
  require(bs_height_m >= 0.0 && ue_height_m >= 0.0, "antenna: heights must be non-negative");
}

void LinkParams::validate() const {
  require(std::isfinite(tx_power_dbm), "link: tx power must be finite");
  require(pilot_fraction > 0.0 && pilot_fraction < 1.0, "link: pilot fraction must be in (0,1)");
  require(std::isfinite(noise_figure_db), "link: noise figure must be finite");
}

void PropagationModel::validate() const {
  pathloss.validate();
  antenna.validate();
  link.validate();
  shadowing.validate();
}

double path_loss(PathLossParams const& params, double distance_km) {
  if (!std::isfinite(distance_km) || !std::isfinite(params.k_per_km) ||
      !std::isfinite(params.beta)) {
    throw std::invalid_argument("path_loss: non-finite input");
  }
  if (distance_km < 0.0) throw std::invalid_argument("path_loss: negative distance");
  double const d = std::max(distance_km, params.min_distance_km);
  return std::pow(params.k_per_km * d, params.beta);
}

PathLossParams params_from_cost_hata(CostHataZone const& zone) {
  if (!(zone.b_db_per_decade > 20.0)) {
    throw std::invalid_argument("params_from_cost_hata: B must exceed 20 dB/decade");
  }
  PathLossParams p;
  p.k_per_km = std::pow(10.0, zone.a_db / zone.b_db_per_decade);
  p.beta = zone.b_db_per_decade / 10.0;
  return p;
}

double scale_k_to_frequency(double k0_per_km, double f0_ghz, double f_ghz, double beta) {
  if (!(k0_per_km > 0.0 && f0_ghz > 0.0 && f_ghz > 0.0 && beta > 0.0)) {
    throw std::invalid_argument("scale_k_to_frequency: arguments must be positive");
  }
  return k0_per_km * std::pow(f_ghz / f0_ghz, 2.0 / beta);
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("noise_power_dbm: bandwidth must be positive");
  return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double antenna_gain_db(AntennaConfig const& antenna, Point site, Point location) {
  if (antenna.mode == AntennaMode::omni) return 0.0;

  double const dx = location.x_km - site.x_km;
  double const dy = location.y_km - site.y_km;
  double const ground_m = std::hypot(dx, dy) * 1000.0;
  double const elevation_deg =
      std::atan2(antenna.bs_height_m - antenna.ue_height_m, ground_m) * kRadToDeg;
  double const off_tilt = (elevation_deg - antenna.downtilt_deg) / antenna.el_beamwidth_deg;
  double const vertical = -std::min(12.0 * off_tilt * off_tilt, antenna.side_lobe_limit_db);

  // Azimuth measured clockwise from north (+y), as sector bearings usually are.
  double const bearing_deg = std::atan2(dx, dy) * kRadToDeg;
  double best = -std::numeric_limits<double>::infinity();
  for (double const sector : antenna.sector_azimuths_deg) {
    double const off_axis = wrap_degrees(bearing_deg - sector) / antenna.az_beamwidth_deg;
    double const horizontal = -std::min(12.0 * off_axis * off_axis, antenna.front_back_limit_db);
    double const combined = -std::min(-(horizontal + vertical), antenna.front_back_limit_db);
    best = std::max(best, combined);
  }
  return best + antenna.max_gain_dbi;
}

double received_power_w(PropagationModel const& model, Point site, double power_dbm,
                        Point location, double shadow_gain) {
  double const gain_db = antenna_gain_db(model.antenna, site, location);
  double const loss = path_loss(model.pathloss, distance_km(site, location));
  return dbm_to_watt(power_dbm + gain_db) * shadow_gain / loss;
}

double propagation_loss(PropagationModel const& model, Point site, double power_dbm,
                        Point location, double shadow_gain) {
  return 1.0 / received_power_w(model, site, power_dbm, location, shadow_gain);
}

}  // namespace celldim
