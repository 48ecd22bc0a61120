#include "celldim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace celldim {

ScalingTransform::ScalingTransform(double a) : alpha(a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("scaling: alpha must be positive");
}

PropagationModel dilate_propagation(PropagationModel model, double alpha) {
  model.pathloss.k_per_km /= alpha;
  model.pathloss.min_distance_km *= alpha;
  model.antenna.bs_height_m *= alpha;
  model.antenna.ue_height_m *= alpha;
  model.shadowing.corr_dist_km *= alpha;
  return model;
}

RescaledBundle rescale(Scene const& scene, double rho_surface, ScalingTransform const& transform) {
  double const a = transform.alpha;
  if (a == 1.0) return {scene, rho_surface};

  RescaledBundle out{scene, rho_surface / (a * a)};
  Deployment& d = out.scene.deployment;
  for (Station& s : d.stations) {
    s.position.x_km *= a;
    s.position.y_km *= a;
  }
  d.window.width_km *= a;
  d.window.height_km *= a;
  d.window.guard_km *= a;
  d.intensity_per_km2 /= a * a;
  out.scene.grid.dx_km *= a;
  out.scene.grid.dy_km *= a;
  out.scene.propagation = dilate_propagation(scene.propagation, a);
  return out;
}

HomogeneousSetup rescale(HomogeneousSetup setup, ScalingTransform const& transform) {
  double const a = transform.alpha;
  setup.intensity_per_km2 /= a * a;
  setup.window_width_km *= a;
  setup.window_height_km *= a;
  if (setup.guard_km >= 0.0) setup.guard_km *= a;
  setup.resolution_km *= a;
  setup.propagation = dilate_propagation(setup.propagation, a);
  return setup;
}

double relative_deviation(double a, double b) {
  if (a == b) return 0.0;
  double const scale = std::max(std::abs(a), std::abs(b));
  if (std::isinf(scale)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / scale;
}

ScalingDeviation compare_solutions(LoadSolution const& original, LoadSolution const& rescaled,
                                   std::span<std::size_t const> cells) {
  ScalingDeviation dev;
  dev.cells = cells.size();
  dev.converged = original.converged && rescaled.converged;
  for (std::size_t const c : cells) {
    CellMetrics const& a = original.cells.at(c);
    CellMetrics const& b = rescaled.cells.at(c);
    dev.theta = std::max(dev.theta, relative_deviation(original.theta[c], rescaled.theta[c]));
    dev.rho = std::max(dev.rho, relative_deviation(a.rho, b.rho));
    dev.rho_c = std::max(dev.rho_c, relative_deviation(a.rho_c, b.rho_c));
    dev.r = std::max(dev.r, relative_deviation(a.r, b.r));
    dev.n_users = std::max(dev.n_users, relative_deviation(a.n_users, b.n_users));
  }
  return dev;
}

ScalingDeviation verify_scaling(Network const& original, LoadSolution const& original_solution,
                                double rho_surface, double alpha, RateModel const& rate, double noise_w,
                                SolverConfig const& solver, NetworkOptions const& options) {
  RescaledBundle bundle = rescale(original.scene, rho_surface, ScalingTransform(alpha));
  Network const scaled = build_network(std::move(bundle.scene), options);
  LoadSolution const sol = solve_loads(scaled, rate, noise_w, bundle.rho_surface, solver);
  ScalingDeviation dev = compare_solutions(original_solution, sol, original.interior);
  dev.alpha = alpha;
  return dev;
}

ScalingDeviation verify_scaling(Scene const& scene, double rho_surface, double alpha, RateModel const& rate,
                                double noise_w, SolverConfig const& solver, NetworkOptions const& options) {
  Network const original = build_network(scene, options);
  LoadSolution const sol = solve_loads(original, rate, noise_w, rho_surface, solver);
  return verify_scaling(original, sol, rho_surface, alpha, rate, noise_w, solver, options);
}

ZoneSpec zone_from_cost_hata(std::string name, CostHataZone const& zone, double spacing_km) {
  PathLossParams const p = params_from_cost_hata(zone);
  ZoneSpec z;
  z.name = std::move(name);
  z.cost_hata = zone;
  z.k_per_km = p.k_per_km;
  z.beta = p.beta;
  z.spacing_km = spacing_km;
  return z;
}

double kd_spread(std::span<ZoneSpec const> zones) {
  if (zones.empty()) return 0.0;
  double mean = 0.0;
  for (ZoneSpec const& z : zones) mean += z.k_per_km * z.spacing_km;
  mean /= static_cast<double>(zones.size());
  double spread = 0.0;
  for (ZoneSpec const& z : zones) spread = std::max(spread, std::abs(z.k_per_km * z.spacing_km - mean) / mean);
  return spread;
}

CompositeResult build_composite(CompositeScenario const& scenario) {
  if (scenario.zones.empty()) throw std::invalid_argument("composite: no zones");
  if (!(scenario.resolution_spacings >= 0.0)) throw std::invalid_argument("composite: resolution must be >= 0");
  for (ZoneSpec const& z : scenario.zones) {
    if (!(z.spacing_km > 0.0 && z.k_per_km > 0.0 && z.beta > 2.0)) {
      throw std::invalid_argument("composite: zone '" + z.name + "' needs K > 0, beta > 2, spacing > 0");
    }
  }

  CompositeResult result;
  double const spread = kd_spread(scenario.zones);
  if (spread > scenario.kd_tolerance) {
    std::ostringstream msg;
    msg << "K*D products deviate by " << spread * 100.0 << "% from their mean (tolerance "
        << scenario.kd_tolerance * 100.0 << "%)";
    result.warnings.push_back(msg.str());
  }

  double const reference_spacing = scenario.zones.front().spacing_km;
  double const reference_beta = scenario.zones.front().beta;
  for (std::size_t i = 0; i < scenario.zones.size(); ++i) {
    ZoneSpec const& zone = scenario.zones[i];
    double const stretch = zone.spacing_km / reference_spacing;

    HomogeneousSetup setup;
    setup.intensity_per_km2 = zone.intensity_per_km2();
    setup.window_width_km = scenario.window_spacings * zone.spacing_km;
    setup.window_height_km = setup.window_width_km;
    setup.resolution_km = scenario.resolution_spacings * zone.spacing_km;
    setup.power_dbm = scenario.power_dbm;
    setup.realizations = scenario.realizations;
    // Lengths other than the spacing follow the zone dilation.
    setup.propagation = dilate_propagation(scenario.propagation, stretch);
    setup.propagation.pathloss.k_per_km = zone.k_per_km;
    setup.propagation.pathloss.beta = scenario.per_zone_beta ? zone.beta : reference_beta;
    setup.seed = scenario.shared_seeds ? scenario.seed : mix_seed(scenario.seed, i + 1);
    if (!scenario.shared_seeds) {
      setup.propagation.shadowing.seed = mix_seed(scenario.propagation.shadowing.seed, i + 1);
    }

    std::vector<Network> const networks = realize_networks(setup, scenario.network);
    ZoneCurve zc;
    zc.name = zone.name;
    zc.k_per_km = zone.k_per_km;
    zc.beta = setup.propagation.pathloss.beta;
    zc.spacing_km = zone.spacing_km;
    zc.kd_product = zone.k_per_km * zone.spacing_km;
    zc.curve = traffic_curve(networks, scenario.rate, scenario.noise_w, scenario.rho_bar,
                             TrafficAxis::per_cell, scenario.solver);
    result.zones.push_back(std::move(zc));
  }
  return result;
}

HomogeneityGap qos_homogeneity(std::span<ZoneCurve const> zones) {
  if (zones.size() < 2) throw std::invalid_argument("qos_homogeneity: need at least two zones");
  std::size_t const points = zones.front().curve.size();
  for (ZoneCurve const& z : zones) {
    if (z.curve.size() != points) throw std::invalid_argument("qos_homogeneity: zones use different traffic grids");
  }
  auto spread = [](std::vector<double> const& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo == *hi) return 0.0;
    double mean = 0.0;
    for (double const x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (!std::isfinite(mean) || mean == 0.0) return std::numeric_limits<double>::infinity();
    return (*hi - *lo) / mean;
  };

  HomogeneityGap gap;
  std::vector<double> theta(zones.size());
  std::vector<double> r(zones.size());
  for (std::size_t j = 0; j < points; ++j) {
    for (std::size_t i = 0; i < zones.size(); ++i) {
      theta[i] = zones[i].curve[j].cell.theta_bar;
      r[i] = zones[i].curve[j].cell.r_bar;
    }
    gap.theta_per_point.push_back(spread(theta));
    gap.r_per_point.push_back(spread(r));
    gap.theta = std::max(gap.theta, gap.theta_per_point.back());
    gap.r = std::max(gap.r, gap.r_per_point.back());
  }
  return gap;
}

}  // namespace celldim
