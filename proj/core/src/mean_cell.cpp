#include "celldim/mean_cell.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "celldim/parallel.hpp"
#include "celldim/shadowing.hpp"

namespace celldim {
namespace {

TypicalSample observe(std::span<Station const> stations, PropagationModel const& model, Point at,
                      std::mt19937_64& rng) {
  // Every station spends the same pilot fraction, so the strongest pilot is
  // the strongest total received power.
  double total = 0.0;
  double best = -1.0;
  for (Station const& s : stations) {
    double const g = received_power_w(model, s.position, s.power_dbm, at,
                                      draw_lognormal_shadow(model.shadowing, rng));
    total += g;
    if (g > best) best = g;
  }
  return {best, total - best};
}

void check(MeanCellMcConfig const& config) {
  if (config.samples < 1) throw std::invalid_argument("meancell: need at least one sample");
  if (!(config.window_factor > 0.0)) throw std::invalid_argument("meancell: window factor must be positive");
}

}  // namespace

std::vector<TypicalSample> sample_typical_ppp(double intensity_per_km2, PropagationModel const& model,
                                              double power_dbm, MeanCellMcConfig const& config) {
  check(config);
  model.validate();
  double const side = config.window_factor / std::sqrt(intensity_per_km2);
  Window const window{side, side, 0.0};
  Point const centre{side / 2.0, side / 2.0};
  std::vector<TypicalSample> out(config.samples);
  parallel_for(config.samples, config.workers, [&](std::size_t i) {
    std::uint64_t const seed = mix_seed(config.seed, i);
    Deployment const d = sample_ppp(intensity_per_km2, window, seed, power_dbm);
    std::mt19937_64 rng(mix_seed(seed, 0xC0FFEE));
    out[i] = observe(d.stations, model, centre, rng);
  });
  return out;
}

std::vector<TypicalSample> sample_typical_fixed(Deployment const& deployment, PropagationModel const& model,
                                                MeanCellMcConfig const& config) {
  check(config);
  model.validate();
  std::vector<TypicalSample> out(config.samples);
  parallel_for(config.samples, config.workers, [&](std::size_t i) {
    std::mt19937_64 rng(mix_seed(config.seed, i));
    std::uniform_real_distribution<double> ux(0.0, deployment.window.width_km);
    std::uniform_real_distribution<double> uy(0.0, deployment.window.height_km);
    Point const at{ux(rng), uy(rng)};
    out[i] = observe(deployment.stations, model, at, rng);
  });
  return out;
}

MeanCellAnalytic solve_mean_cell(std::span<TypicalSample const> samples, double rho_bar,
                                 RateModel const& rate, double noise_w, MeanCellMcConfig const& config) {
  if (samples.empty()) throw std::invalid_argument("solve_mean_cell: no samples");
  if (rho_bar < 0.0) throw std::invalid_argument("solve_mean_cell: traffic must be non-negative");
  rate.validate();
  auto map = [&](double theta) {
    double const phi = std::min(theta, 1.0);
    double sum = 0.0;
    for (TypicalSample const& s : samples) {
      sum += 1.0 / peak_rate(rate, sinr(s.serving_w, phi * s.others_w, noise_w));
    }
    return rho_bar * sum / static_cast<double>(samples.size());
  };

  MeanCellAnalytic out;
  double theta = 1.0;
  for (int it = 1; it <= config.max_iter; ++it) {
    double const next = map(theta);
    out.residual = std::abs(next - theta);
    theta = (1.0 - config.damping) * theta + config.damping * next;
    out.iterations = it;
    if (out.residual < config.tol * std::max(1.0, theta)) {
      out.converged = true;
      break;
    }
  }
  out.theta_bar = std::max(theta, 0.0);
  return out;
}

MeanCellAnalytic mean_cell_analytic(double intensity_per_km2, double rho_surface,
                                    PropagationModel const& model, double power_dbm,
                                    RateModel const& rate, double noise_w, MeanCellMcConfig const& config) {
  if (!(intensity_per_km2 > 0.0)) throw std::invalid_argument("mean_cell_analytic: intensity must be positive");
  auto const samples = sample_typical_ppp(intensity_per_km2, model, power_dbm, config);
  return solve_mean_cell(samples, rho_surface / intensity_per_km2, rate, noise_w, config);
}

}  // namespace celldim
