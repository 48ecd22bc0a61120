#include "celldim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "celldim/mean_cell.hpp"

namespace celldim {
namespace {

TrafficAxis sweep_axis(TrafficConfig const& traffic, std::vector<double>& grid) {
  if (!traffic.rho_bar_bps.empty()) {
    grid = traffic.rho_bar_bps;
    return TrafficAxis::per_cell;
  }
  if (!traffic.rho_bps_per_km2.empty()) {
    grid = traffic.rho_bps_per_km2;
    return TrafficAxis::per_surface;
  }
  throw ConfigError("scenario: this experiment needs traffic.rho_bar_kbps or traffic.rho_kbps_per_km2");
}

std::size_t interior_count(std::span<Network const> networks) {
  std::size_t n = 0;
  for (Network const& net : networks) n += net.interior.size();
  return n;
}

}  // namespace

bool SweepResult::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](SweepRecord const& r) {
    return r.point.converged && (!r.analytic || r.analytic->converged);
  });
}

SweepResult run_sweep(Scenario const& scenario) {
  std::vector<Network> const networks = realize(scenario.setup);
  return run_sweep(scenario, networks);
}

SweepResult run_sweep(Scenario const& scenario, std::span<Network const> networks) {
  std::vector<double> grid;
  SweepResult out;
  out.axis = sweep_axis(scenario.traffic, grid);
  out.realizations = networks.size();
  out.interior_cells = interior_count(networks);
  out.mean_cell_surface_km2 = mean_interior_surface(networks);

  Setup const& setup = scenario.setup;
  double const noise = setup.noise_w();
  double const intensity = networks.front().scene.deployment.intensity_per_km2;

  std::vector<TypicalSample> samples;
  if (scenario.meancell_analytic) {
    samples = setup.geometry.deterministic_positions.empty()
                  ? sample_typical_ppp(intensity, setup.propagation, setup.propagation.link.tx_power_dbm,
                                       scenario.meancell)
                  : sample_typical_fixed(networks.front().scene.deployment, setup.propagation, scenario.meancell);
  }

  for (double const value : grid) {
    SweepRecord rec;
    rec.traffic = value;
    rec.rho_surface = out.axis == TrafficAxis::per_cell ? value / out.mean_cell_surface_km2 : value;
    rec.point = mean_cell_point(networks, setup.rate, noise, value, out.axis, scenario.solver);
    if (scenario.meancell_analytic) {
      double const rho_bar = out.axis == TrafficAxis::per_cell ? value : value / intensity;
      rec.analytic = solve_mean_cell(samples, rho_bar, setup.rate, noise, scenario.meancell);
    }
    out.rows.push_back(rec);
  }
  return out;
}

ThroughputProbe::ThroughputProbe(std::vector<Network> networks, Setup const& setup, SolverConfig solver)
    : networks_(std::move(networks)), setup_(setup), solver_(solver) {}

CurvePoint ThroughputProbe::evaluate(double bandwidth_hz, double rho_bar_bps) const {
  RateModel rate = setup_.rate;
  rate.bandwidth_hz = bandwidth_hz;
  return mean_cell_point(networks_, rate, setup_.noise_w(bandwidth_hz), rho_bar_bps, TrafficAxis::per_cell,
                         solver_);
}

DimensionRecord min_bandwidth(ThroughputProbe const& probe, DimensionConfig const& config, double rho_bar_bps) {
  auto const last = static_cast<std::size_t>(
      std::ceil((config.w_max_hz - config.w_min_hz) / config.tolerance_hz - 1e-9));
  auto width = [&](std::size_t k) {
    return std::min(config.w_min_hz + static_cast<double>(k) * config.tolerance_hz, config.w_max_hz);
  };

  DimensionRecord rec;
  rec.rho_bar_bps = rho_bar_bps;
  std::map<std::size_t, CurvePoint> cache;
  auto eval = [&](std::size_t k) -> CurvePoint const& {
    auto it = cache.find(k);
    if (it == cache.end()) {
      it = cache.emplace(k, probe.evaluate(width(k), rho_bar_bps)).first;
      ++rec.evaluations;
    }
    return it->second;
  };
  auto passes = [&](std::size_t k) { return eval(k).cell.r_bar >= config.target_bps; };
  auto finish = [&](std::optional<std::size_t> k) {
    CurvePoint const& p = eval(k.value_or(last));
    rec.r_bar_bps = p.cell.r_bar;
    rec.converged = p.converged;
    if (k) rec.min_bandwidth_hz = width(*k);
    return rec;
  };

  std::vector<std::size_t> scan;
  std::size_t const points = std::max<std::size_t>(2, config.scan_points);
  for (std::size_t i = 0; i < points; ++i) {
    std::size_t const k = static_cast<std::size_t>(
        std::llround(static_cast<double>(i) * static_cast<double>(last) / static_cast<double>(points - 1)));
    if (scan.empty() || k != scan.back()) scan.push_back(k);
  }
  for (std::size_t i = 1; i < scan.size(); ++i) {
    double const lo = eval(scan[i - 1]).cell.r_bar;
    double const hi = eval(scan[i]).cell.r_bar;
    if (hi < lo * (1.0 - 1e-9)) rec.non_monotone = true;
  }

  if (rec.non_monotone) {
    for (std::size_t k = 0; k <= last; ++k) {
      if (passes(k)) return finish(k);
    }
    return finish(std::nullopt);
  }

  if (!passes(last)) return finish(std::nullopt);
  std::size_t i = 0;
  while (!passes(scan[i])) ++i;
  if (i == 0) return finish(scan[0]);
  std::size_t lo = scan[i - 1];
  std::size_t hi = scan[i];
  while (hi - lo > 1) {
    std::size_t const mid = lo + (hi - lo) / 2;
    (passes(mid) ? hi : lo) = mid;
  }
  return finish(hi);
}

std::vector<DimensionRecord> dimension_bandwidth(Scenario const& scenario) {
  DimensionConfig const& config = scenario.dimension;
  std::vector<double> grid = config.rho_bar_bps.empty() ? scenario.traffic.rho_bar_bps : config.rho_bar_bps;
  if (grid.empty()) throw ConfigError("scenario: dimension needs dimension.rho_bar_kbps");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw ConfigError("scenario: the dimensioning traffic grid must be increasing");
  }

  std::vector<DimensionVariant> variants = config.variants;
  if (variants.empty()) variants.push_back({"base", scenario.setup});

  std::vector<DimensionRecord> out;
  for (DimensionVariant const& variant : variants) {
    ThroughputProbe const probe(realize(variant.setup), variant.setup, scenario.solver);
    for (double const rho_bar : grid) {
      DimensionRecord rec = min_bandwidth(probe, config, rho_bar);
      rec.variant = variant.name;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

ScaleCheckResult run_scale_check(Scenario const& scenario) {
  Setup const& setup = scenario.setup;
  double const noise = setup.noise_w();
  ScaleCheckResult out;
  out.fresh_seed_mode = scenario.scaling.fresh_seed_mode;
  out.rho_bps_per_km2 = scenario.scaling.rho_bps_per_km2;

  std::vector<Network> const networks = realize(setup);

  if (!out.fresh_seed_mode) {
    std::vector<LoadSolution> solutions;
    for (Network const& net : networks) {
      solutions.push_back(solve_loads(net, setup.rate, noise, out.rho_bps_per_km2, scenario.solver));
    }
    for (double const alpha : scenario.scaling.alphas) {
      ScalingDeviation total;
      total.alpha = alpha;
      for (std::size_t i = 0; i < networks.size(); ++i) {
        ScalingDeviation const d = verify_scaling(networks[i], solutions[i], out.rho_bps_per_km2, alpha,
                                                  setup.rate, noise, scenario.solver, setup.network);
        total.theta = std::max(total.theta, d.theta);
        total.rho = std::max(total.rho, d.rho);
        total.rho_c = std::max(total.rho_c, d.rho_c);
        total.r = std::max(total.r, d.r);
        total.n_users = std::max(total.n_users, d.n_users);
        total.cells += d.cells;
        total.converged = total.converged && d.converged;
      }
      out.rows.push_back(total);
    }
    return out;
  }

  if (!setup.geometry.deterministic_positions.empty()) {
    throw ConfigError("scenario: scaling.fresh_seed_mode needs a Poisson deployment");
  }
  std::vector<double> grid = scenario.traffic.rho_bar_bps;
  if (grid.empty()) grid.push_back(out.rho_bps_per_km2 / setup.geometry.intensity());
  std::vector<CurvePoint> const base =
      traffic_curve(networks, setup.rate, noise, grid, TrafficAxis::per_cell, scenario.solver);

  HomogeneousSetup const h = setup.homogeneous();
  for (std::size_t i = 0; i < scenario.scaling.alphas.size(); ++i) {
    double const alpha = scenario.scaling.alphas[i];
    HomogeneousSetup fresh = rescale(h, ScalingTransform(alpha));
    fresh.seed = mix_seed(h.seed, 1000 + i);
    fresh.propagation.shadowing.seed = mix_seed(h.propagation.shadowing.seed, 1000 + i);
    std::vector<Network> const scaled = realize_networks(fresh, setup.network);
    std::vector<CurvePoint> const curve =
        traffic_curve(scaled, setup.rate, noise, grid, TrafficAxis::per_cell, scenario.solver);

    ScalingDeviation dev;
    dev.alpha = alpha;
    dev.cells = interior_count(scaled);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      MeanCell const& a = base[j].cell;
      MeanCell const& b = curve[j].cell;
      dev.theta = std::max(dev.theta, relative_deviation(a.theta_bar, b.theta_bar));
      dev.rho = std::max(dev.rho, relative_deviation(a.rho_bar, b.rho_bar));
      dev.rho_c = std::max(dev.rho_c, relative_deviation(a.rho_c_bar, b.rho_c_bar));
      dev.r = std::max(dev.r, relative_deviation(a.r_bar, b.r_bar));
      dev.n_users = std::max(dev.n_users, relative_deviation(a.n_bar, b.n_bar));
      dev.converged = dev.converged && base[j].converged && curve[j].converged;
    }
    out.rows.push_back(dev);
  }
  return out;
}

CompositeScenario composite_from(Scenario const& scenario) {
  if (scenario.zones.empty()) throw ConfigError("scenario: composite needs at least one entry in zones");
  if (scenario.traffic.rho_bar_bps.empty()) throw ConfigError("scenario: composite needs traffic.rho_bar_kbps");
  Setup const& setup = scenario.setup;
  CompositeScenario c;
  for (ZoneConfig const& z : scenario.zones) {
    if (z.cost_hata) {
      c.zones.push_back(zone_from_cost_hata(z.name, *z.cost_hata, z.spacing_km));
    } else {
      c.zones.push_back({z.name, std::nullopt, *z.k_per_km, *z.beta, z.spacing_km});
    }
  }
  c.propagation = setup.propagation;
  c.rate = setup.rate;
  c.noise_w = setup.noise_w();
  c.power_dbm = setup.propagation.link.tx_power_dbm;
  c.solver = scenario.solver;
  c.network = setup.network;
  c.rho_bar = scenario.traffic.rho_bar_bps;
  c.window_spacings = setup.geometry.window_spacings.value_or(20.0);
  // A resolution given in metres applies to the first zone and dilates with the others.
  if (setup.geometry.resolution_m) c.resolution_spacings = *setup.geometry.resolution_m / 1e3 / c.zones.front().spacing_km;
  c.realizations = setup.geometry.realizations;
  c.seed = setup.geometry.seed;
  c.shared_seeds = scenario.composite.shared_seeds;
  c.per_zone_beta = scenario.composite.per_zone_beta;
  c.kd_tolerance = scenario.composite.kd_tolerance;
  return c;
}

CompositeRun run_composite(Scenario const& scenario) {
  CompositeScenario const c = composite_from(scenario);
  CompositeRun run;
  run.rho_bar_bps = c.rho_bar;
  run.result = build_composite(c);
  if (run.result.zones.size() >= 2) run.gap = qos_homogeneity(run.result.zones);
  return run;
}

}  // namespace celldim
