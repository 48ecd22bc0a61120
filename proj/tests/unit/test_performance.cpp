#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "celldim/performance.hpp"
#include "oracles.hpp"
#include "toy.hpp"

using namespace celldim;

TEST(CellTraffic, Product) {
  EXPECT_EQ(cell_traffic(0.0, 3.0), 0.0);
  EXPECT_NEAR(cell_traffic(600e3, 1.0 / 1.15), 521.7e3, 0.1e3);
  EXPECT_EQ(cell_traffic(5.0, 2.0), cell_traffic(5.0, 2.0));
  EXPECT_THROW(cell_traffic(-1.0, 1.0), std::invalid_argument);
}

TEST(TrafficModel, SurfaceDensity) {
  TrafficModel const t{2.5, 4e6};
  EXPECT_EQ(t.rho_surface(), 2.5 * 4e6);
}

TEST(CriticalTraffic, HarmonicMean) {
  std::vector<double> const w{0.25, 0.25, 0.25, 0.25};
  std::vector<double> const flat{3e6, 3e6, 3e6, 3e6};
  EXPECT_NEAR(critical_traffic(flat, w), 3e6, 1e-6);
  std::vector<double> const halves{1e6, 1e6, 2e6, 2e6};
  EXPECT_NEAR(critical_traffic(halves, w), 4.0 / 3.0 * 1e6, 1e-6);
  std::vector<double> const zero{1e6, 0.0, 2e6, 2e6};
  EXPECT_EQ(critical_traffic(zero, w), 0.0);
}

TEST(CriticalTraffic, BelowArithmeticMean) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> r(17), w(17);
    double arith = 0.0, total = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = u(rng);
      w[i] = u(rng);
      arith += r[i] * w[i];
      total += w[i];
    }
    double const rc = critical_traffic(r, w);
    EXPECT_LE(rc, arith / total * (1.0 + 1e-12));
    EXPECT_LE(rc, *std::max_element(r.begin(), r.end()));
  }
}

TEST(CellMetrics, Examples) {
  CellMetrics const a = cell_metrics(4.0, 10.0);
  EXPECT_DOUBLE_EQ(a.r, 6.0);
  EXPECT_DOUBLE_EQ(a.n_users, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(a.theta, 0.4);
  EXPECT_DOUBLE_EQ(a.p_busy, 0.4);

  CellMetrics const b = cell_metrics(10.0, 10.0);
  EXPECT_EQ(b.r, 0.0);
  EXPECT_EQ(b.theta, 1.0);
  EXPECT_EQ(b.p_busy, 1.0);
  EXPECT_TRUE(b.users_unbounded());

  CellMetrics const c = cell_metrics(0.0, 10.0);
  EXPECT_EQ(c.r, 10.0);
  EXPECT_EQ(c.n_users, 0.0);
  EXPECT_EQ(c.theta, 0.0);
  EXPECT_EQ(c.p_busy, 0.0);

  CellMetrics const d = cell_metrics(30.0, 10.0);
  EXPECT_EQ(d.p_busy, 1.0);
  EXPECT_EQ(d.r, 0.0);
  EXPECT_TRUE(d.users_unbounded());
  EXPECT_THROW(cell_metrics(-1.0, 1.0), std::invalid_argument);
}

TEST(SolveLoads, SingleStationOneSweep) {
  Network const net = toy::network({{1.0, 1.0}}, {2.0, 2.0, 0.0}, 0.05);
  RateModel const rate;
  SolverConfig cfg;
  cfg.record_history = true;
  LoadSolution const sol = solve_loads(net, rate, toy::urban_noise_w(), 500e3, cfg);
  ASSERT_GE(sol.history.size(), 1u);
  EXPECT_EQ(sol.history[0][0], sol.theta[0]);
  EXPECT_TRUE(sol.converged);
  EXPECT_EQ(sol.residual, 0.0);
  EXPECT_EQ(sol.iterations, 2);

  double integral = 0.0;
  EvalGrid const& g = net.scene.grid;
  PropagationModel const m = toy::omni_model();
  for (std::size_t n = 0; n < g.size(); ++n) {
    double const p = received_power_w(m, {1.0, 1.0}, 60.0, g.node(n), 1.0);
    integral += g.node_weight_km2() / peak_rate(rate, p / toy::urban_noise_w());
  }
  EXPECT_NEAR(sol.theta[0] / (500e3 * integral), 1.0, 1e-12);
}

TEST(SolveLoads, ZeroTraffic) {
  Network const net = toy::network(toy::three_sites(), toy::three_window(), 0.05);
  SolverConfig cfg;
  cfg.record_history = true;
  LoadSolution const sol = solve_loads(net, RateModel{}, toy::urban_noise_w(), 0.0, cfg);
  for (double t : sol.history.front()) EXPECT_EQ(t, 0.0);
  EXPECT_TRUE(sol.converged);
  for (CellMetrics const& c : sol.cells) {
    EXPECT_EQ(c.theta, 0.0);
    EXPECT_EQ(c.rho, 0.0);
    EXPECT_EQ(c.n_users, 0.0);
    EXPECT_EQ(c.p_busy, 0.0);
    EXPECT_GT(c.rho_c, 0.0);
    EXPECT_EQ(c.r, c.rho_c);
  }
}

TEST(SolveLoads, MatchesStraightLoopOracle) {
  auto const sites = toy::three_sites();
  Window const window = toy::three_window();
  Network const net = toy::network(sites, window, 0.025);
  oracle::ToyRadio const radio;
  double const rho = 900e3;
  SolverConfig cfg;
  cfg.record_history = true;
  cfg.oscillation_fallback = false;
  LoadSolution const sol = solve_loads(net, RateModel{}, radio.noise_w, rho, cfg);
  auto const ref = oracle::load_iterates(sites, net.scene.grid, radio, rho, sol.iterations);
  ASSERT_EQ(ref.size(), sol.history.size());
  for (std::size_t it = 0; it < ref.size(); ++it) {
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_NEAR(sol.history[it][c], ref[it][c], 1e-12 * std::max(1.0, std::abs(ref[it][c])))
          << "sweep " << it << " cell " << c;
    }
  }
  EXPECT_TRUE(sol.converged);
  EXPECT_LT(sol.residual, 1e-4);
  EXPECT_LE(sol.iterations, 200);
}

TEST(SolveLoads, ResidualUnderReevaluation) {
  Window const w{10.0, 10.0, 2.0};
  PropagationModel m = toy::omni_model();
  m.shadowing.mode = ShadowingMode::iid;
  Network const net = build_network(make_scene(sample_ppp(1.15, w, 12), EvalGrid::covering(w, 0.1), m));
  RateModel const rate;
  double const rho = 700e3;
  SolverConfig const cfg;
  LoadSolution const sol = solve_loads(net, rate, toy::urban_noise_w(), rho, cfg);
  ASSERT_TRUE(sol.converged);
  std::vector<double> factors(sol.theta.size());
  for (std::size_t c = 0; c < factors.size(); ++c) factors[c] = std::min(sol.theta[c], 1.0);
  auto const integrals = load_integrals(net, rate, toy::urban_noise_w(), factors);
  // One more sweep from a point within tol of a contraction's fixed point
  // moves by less than tol.
  for (std::size_t c = 0; c < factors.size(); ++c) EXPECT_LT(std::abs(rho * integrals[c] - sol.theta[c]), cfg.tol);
}

TEST(SolveLoads, MonotoneInTraffic) {
  Window const w{8.0, 8.0, 1.5};
  Network const net = build_network(make_scene(sample_ppp(1.15, w, 21), EvalGrid::covering(w, 0.1), toy::omni_model()));
  SolverConfig cfg;
  cfg.tol = 1e-9;
  cfg.max_iter = 2000;
  std::vector<double> prev(net.cell_count(), 0.0);
  for (double rho = 0.0; rho <= 1.5e6; rho += 150e3) {
    LoadSolution const sol = solve_loads(net, RateModel{}, toy::urban_noise_w(), rho, cfg);
    ASSERT_TRUE(sol.converged) << rho;
    for (std::size_t c = 0; c < prev.size(); ++c) EXPECT_GE(sol.theta[c], prev[c] - 1e-7);
    prev = sol.theta;
  }
}

TEST(SolveLoads, HarmonicBoundPerCell) {
  Window const w{6.0, 6.0, 1.0};
  Network const net = build_network(make_scene(sample_ppp(1.15, w, 2), EvalGrid::covering(w, 0.1), toy::omni_model()));
  RateModel const rate;
  LoadSolution const sol = solve_loads(net, rate, toy::urban_noise_w(), 500e3, SolverConfig{});
  std::vector<double> factors(sol.theta.size());
  for (std::size_t c = 0; c < factors.size(); ++c) factors[c] = std::min(sol.theta[c], 1.0);
  std::vector<double> best(net.cell_count(), 0.0);
  std::vector<double> scratch(net.cell_count());
  for (std::size_t n = 0; n < net.scene.grid.size(); ++n) {
    std::size_t const s = net.partition.serving[n];
    double const r = peak_rate(rate, sinr_at(net.gains->row(n, scratch), s, factors, toy::urban_noise_w()));
    best[s] = std::max(best[s], r);
  }
  for (std::size_t c = 0; c < best.size(); ++c) {
    if (net.partition.nodes[c].empty()) continue;
    EXPECT_LE(sol.cells[c].rho_c, best[c] * (1.0 + 1e-9));
  }
}

TEST(SolveLoads, ReportsNonConvergence) {
  Network const net = toy::network(toy::three_sites(), toy::three_window(), 0.05);
  SolverConfig cfg;
  cfg.max_iter = 1;
  LoadSolution const sol = solve_loads(net, RateModel{}, toy::urban_noise_w(), 900e3, cfg);
  EXPECT_FALSE(sol.converged);
  EXPECT_EQ(sol.iterations, 1);
  EXPECT_GT(sol.residual, cfg.tol);
}

TEST(SolveLoads, WorkerCountDoesNotChangeBits) {
  Window const w{8.0, 8.0, 1.5};
  PropagationModel m = toy::omni_model();
  m.shadowing.mode = ShadowingMode::correlated;
  Network const net = build_network(make_scene(sample_ppp(1.15, w, 5), EvalGrid::covering(w, 0.1), m));
  SolverConfig a, b;
  b.workers = 3;
  LoadSolution const s1 = solve_loads(net, RateModel{}, toy::urban_noise_w(), 800e3, a);
  LoadSolution const s3 = solve_loads(net, RateModel{}, toy::urban_noise_w(), 800e3, b);
  EXPECT_EQ(s1.theta, s3.theta);
  EXPECT_EQ(s1.iterations, s3.iterations);
}

TEST(SolveLoads, InitialConditionsAgree) {
  Network const net = toy::network(toy::three_sites(), toy::three_window(), 0.05);
  SolverConfig one, zero;
  one.tol = zero.tol = 1e-11;
  zero.init = LoadInit::all_zero;
  LoadSolution const a = solve_loads(net, RateModel{}, toy::urban_noise_w(), 900e3, one);
  LoadSolution const b = solve_loads(net, RateModel{}, toy::urban_noise_w(), 900e3, zero);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(a.theta[c], b.theta[c], 1e-9);
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  c.tol = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.damping = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(NetworkAverage, Identities) {
  std::vector<CellMetrics> cells{cell_metrics(2.0, 10.0), cell_metrics(4.0, 10.0)};
  cells[0].theta = 0.2;
  cells[1].theta = 0.4;
  std::vector<std::size_t> const all{0, 1};
  MeanCell const mc = network_average(cells, all);
  EXPECT_DOUBLE_EQ(mc.theta_bar, 0.3);
  EXPECT_DOUBLE_EQ(mc.rho_bar, 3.0);
  EXPECT_DOUBLE_EQ(mc.rho_c_bar, mc.rho_bar / mc.theta_bar);
  EXPECT_DOUBLE_EQ(mc.r_bar, std::max(mc.rho_c_bar - mc.rho_bar, 0.0));
  EXPECT_DOUBLE_EQ(mc.n_bar, mc.rho_bar / mc.r_bar);
}

TEST(NetworkAverage, IdenticalCells) {
  CellMetrics c = cell_metrics(3.0, 7.0);
  std::vector<CellMetrics> const cells(5, c);
  std::vector<std::size_t> const idx{0, 1, 2, 3, 4};
  MeanCell const mc = network_average(cells, idx);
  EXPECT_NEAR(mc.theta_bar, c.theta, 1e-15);
  EXPECT_NEAR(mc.rho_c_bar, c.rho_c, 1e-12);
  EXPECT_NEAR(mc.r_bar, c.r, 1e-12);
  EXPECT_NEAR(mc.n_bar, c.n_users, 1e-12);
}

TEST(NetworkAverage, Errors) {
  std::vector<CellMetrics> cells{cell_metrics(1.0, 2.0)};
  cells[0].theta = 0.0;
  std::vector<std::size_t> const idx{0};
  EXPECT_THROW(network_average(cells, idx), std::invalid_argument);
  EXPECT_THROW(network_average(cells, std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(NetworkAverage, OverloadedMeanCell) {
  std::vector<CellMetrics> const cells{cell_metrics(20.0, 10.0), cell_metrics(21.0, 10.0)};
  MeanCell const mc = network_average(cells, std::vector<std::size_t>{0, 1});
  EXPECT_EQ(mc.r_bar, 0.0);
  EXPECT_TRUE(std::isinf(mc.n_bar));
}

TEST(MeanCellPoint, PerCellAxisHitsTarget) {
  HomogeneousSetup h;
  h.window_width_km = 12.0 / std::sqrt(1.15);
  h.resolution_km = 0.1;
  h.realizations = 2;
  std::vector<Network> const nets = realize_networks(h);
  CurvePoint const p = mean_cell_point(nets, RateModel{}, toy::urban_noise_w(), 400e3, TrafficAxis::per_cell,
                                       SolverConfig{});
  EXPECT_NEAR(p.cell.rho_bar / 400e3, 1.0, 1e-12);
  EXPECT_TRUE(p.converged);
}

TEST(MeanCellPoint, PalmIdentityOverSeeds) {
  // Unit version of the inverse-formula check; the acceptance suite runs 50 seeds.
  double const lambda = 1.15;
  double const rho = 600e3;
  std::vector<double> estimates;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    HomogeneousSetup h;
    h.window_width_km = 14.0 / std::sqrt(lambda);
    h.resolution_km = 0.1;
    h.seed = seed;
    std::vector<Network> const nets = realize_networks(h);
    CurvePoint const p = mean_cell_point(nets, RateModel{}, toy::urban_noise_w(), rho, TrafficAxis::per_surface,
                                         SolverConfig{});
    estimates.push_back(p.cell.rho_bar);
  }
  double mean = 0.0, var = 0.0;
  for (double e : estimates) mean += e;
  mean /= static_cast<double>(estimates.size());
  for (double e : estimates) var += (e - mean) * (e - mean);
  double const se = std::sqrt(var / static_cast<double>(estimates.size() - 1) / static_cast<double>(estimates.size()));
  EXPECT_NEAR(mean, rho / lambda, 3.0 * se);
}
