#include <gtest/gtest.h>

#include <cmath>

#include "celldim/mean_cell.hpp"
#include "celldim/performance.hpp"
#include "toy.hpp"

using namespace celldim;

TEST(MeanCellAnalytic, ZeroTraffic) {
  MeanCellMcConfig cfg;
  cfg.samples = 50;
  MeanCellAnalytic const r = mean_cell_analytic(1.15, 0.0, toy::omni_model(), 60.0, RateModel{},
                                                toy::urban_noise_w(), cfg);
  EXPECT_EQ(r.theta_bar, 0.0);
  EXPECT_TRUE(r.converged);
}

TEST(MeanCellAnalytic, SingleStationMatchesSolver) {
  Window const w{2.0, 2.0, 0.0};
  Network const net = toy::network({{1.0, 1.0}}, w, 0.02);
  double const rho = 800e3;
  RateModel const rate;
  double const noise = toy::urban_noise_w();
  LoadSolution const sol = solve_loads(net, rate, noise, rho, SolverConfig{});

  MeanCellMcConfig cfg;
  cfg.samples = 200000;
  auto const samples = sample_typical_fixed(net.scene.deployment, toy::omni_model(), cfg);
  double const rho_bar = rho * w.area_km2();
  MeanCellAnalytic const a = solve_mean_cell(samples, rho_bar, rate, noise, cfg);
  ASSERT_TRUE(a.converged);

  double sum = 0.0, sq = 0.0;
  for (TypicalSample const& s : samples) {
    double const v = rho_bar / peak_rate(rate, s.serving_w / noise);
    sum += v;
    sq += v * v;
  }
  double const n = static_cast<double>(samples.size());
  double const se = std::sqrt((sq / n - (sum / n) * (sum / n)) / n);
  EXPECT_NEAR(a.theta_bar, sum / n, 1e-9);
  EXPECT_NEAR(a.theta_bar, sol.theta[0], 3.0 * se + 1e-3 * sol.theta[0]);
}

TEST(MeanCellAnalytic, FixedPointIdentity) {
  MeanCellMcConfig cfg;
  cfg.samples = 500;
  PropagationModel m = toy::omni_model();
  auto const samples = sample_typical_ppp(1.15, m, 60.0, cfg);
  RateModel const rate;
  double const noise = toy::urban_noise_w();
  double const rho_bar = 500e3;
  MeanCellAnalytic const a = solve_mean_cell(samples, rho_bar, rate, noise, cfg);
  ASSERT_TRUE(a.converged);
  double sum = 0.0;
  double const phi = std::min(a.theta_bar, 1.0);
  for (TypicalSample const& s : samples) sum += 1.0 / peak_rate(rate, s.serving_w / (noise + phi * s.others_w));
  EXPECT_NEAR(a.theta_bar, rho_bar * sum / static_cast<double>(samples.size()), 1e-5);
}

TEST(MeanCellAnalytic, LinearRegimeMatchesSimulationSlope) {
  double const lambda = 1.15;
  RateModel const rate;
  double const noise = toy::urban_noise_w();
  PropagationModel const m = toy::omni_model();

  HomogeneousSetup h;
  h.intensity_per_km2 = lambda;
  h.window_width_km = 16.0 / std::sqrt(lambda);
  h.resolution_km = 0.08;
  h.realizations = 3;
  h.propagation = m;
  std::vector<Network> const nets = realize_networks(h);

  MeanCellMcConfig cfg;
  cfg.samples = 20000;
  auto const samples = sample_typical_ppp(lambda, m, 60.0, cfg);

  double sxx = 0.0, sim = 0.0, ana = 0.0;
  for (double rho_bar : {20e3, 40e3, 60e3, 80e3, 100e3}) {
    CurvePoint const p = mean_cell_point(nets, rate, noise, rho_bar, TrafficAxis::per_cell, SolverConfig{});
    MeanCellAnalytic const a = solve_mean_cell(samples, rho_bar, rate, noise, cfg);
    sxx += rho_bar * rho_bar;
    sim += rho_bar * p.cell.theta_bar;
    ana += rho_bar * a.theta_bar;
  }
  EXPECT_NEAR(ana / sim, 1.0, 0.05);
}

TEST(MeanCellAnalytic, DeterministicAcrossWorkers) {
  MeanCellMcConfig a, b;
  a.samples = b.samples = 300;
  b.workers = 3;
  auto const s1 = sample_typical_ppp(1.15, toy::omni_model(), 60.0, a);
  auto const s3 = sample_typical_ppp(1.15, toy::omni_model(), 60.0, b);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1[i].serving_w, s3[i].serving_w);
    EXPECT_EQ(s1[i].others_w, s3[i].others_w);
  }
}

TEST(MeanCellAnalytic, RejectsEmptyConfig) {
  MeanCellMcConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW(sample_typical_ppp(1.15, toy::omni_model(), 60.0, cfg), std::invalid_argument);
}
