#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "celldim/coverage.hpp"
#include "celldim/geometry.hpp"
#include "celldim/network.hpp"
#include "oracles.hpp"
#include "toy.hpp"

using namespace celldim;

TEST(Window, Validation) {
  EXPECT_NO_THROW((Window{2.0, 1.0, 0.4}.validate()));
  EXPECT_THROW((Window{2.0, 1.0, 0.5}.validate()), std::invalid_argument);
  EXPECT_THROW((Window{0.0, 1.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((Window{1.0, 1.0, -0.1}.validate()), std::invalid_argument);
}

TEST(EvalGrid, WeightsSumToWindowArea) {
  for (double res : {0.05, 0.037, 0.3, 2.0}) {
    Window const w{7.3, 4.1, 0.0};
    EvalGrid const g = EvalGrid::covering(w, res);
    EXPECT_NEAR(g.total_area_km2() / w.area_km2(), 1.0, 1e-9);
    Point const last = g.node(g.size() - 1);
    EXPECT_LT(last.x_km, w.width_km);
    EXPECT_LT(last.y_km, w.height_km);
  }
}

TEST(SamplePpp, DeterministicGivenSeed) {
  Window const w{1.0, 1.0, 0.0};
  Deployment const a = sample_ppp(20.0, w, 5);
  Deployment const b = sample_ppp(20.0, w, 5);
  ASSERT_EQ(a.stations.size(), b.stations.size());
  for (std::size_t i = 0; i < a.stations.size(); ++i) {
    EXPECT_EQ(a.stations[i].position.x_km, b.stations[i].position.x_km);
    EXPECT_EQ(a.stations[i].position.y_km, b.stations[i].position.y_km);
  }
}

TEST(SamplePpp, CountIsPoisson) {
  Window const w{30.0, 30.0, 0.0};
  double const expected = 1.15 * 900.0;
  std::vector<double> counts;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Deployment const d = sample_ppp(1.15, w, seed);
    counts.push_back(static_cast<double>(d.stations.size()));
    EXPECT_NEAR(counts.back(), expected, 5.0 * std::sqrt(expected));
    for (Station const& s : d.stations) ASSERT_TRUE(w.contains(s.position));
  }
  double mean = 0.0, var = 0.0;
  for (double c : counts) mean += c;
  mean /= static_cast<double>(counts.size());
  for (double c : counts) var += (c - mean) * (c - mean);
  var /= static_cast<double>(counts.size() - 1);
  EXPECT_NEAR(mean, expected, 3.0 * std::sqrt(expected / 300.0));
  // Dispersion index chi-square with 299 dof: mean 299, sd ~24.5.
  double const chi2 = var * 299.0 / expected;
  EXPECT_NEAR(chi2, 299.0, 3.0 * std::sqrt(2.0 * 299.0));
}

TEST(SamplePpp, TypicalSpacing) {
  // sqrt(area / count) estimates 1/sqrt(lambda); the mean nearest-neighbour
  // distance of a Poisson process is half of that.
  double spacing = 0.0, nn = 0.0;
  std::size_t points = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Window const w{12.0, 12.0, 0.0};
    Deployment const d = sample_ppp(1.15, w, seed);
    spacing += std::sqrt(w.area_km2() / static_cast<double>(d.stations.size()));
    for (std::size_t i = 0; i < d.stations.size(); ++i) {
      Point const p = d.stations[i].position;
      if (!Window{12.0, 12.0, 2.0}.in_interior(p)) continue;
      double best = INFINITY;
      for (std::size_t j = 0; j < d.stations.size(); ++j) {
        if (j != i) best = std::min(best, distance_km(p, d.stations[j].position));
      }
      nn += best;
      ++points;
    }
  }
  EXPECT_NEAR(spacing / 100.0, 1.0 / std::sqrt(1.15), 0.01);
  EXPECT_NEAR(nn / static_cast<double>(points), 0.5 / std::sqrt(1.15), 0.01);
}

TEST(SamplePpp, EmptyDraw) {
  Window const w{0.01, 0.01, 0.0};
  EXPECT_THROW(sample_ppp(1.0, w, 1, 60.0, false), std::runtime_error);
  EXPECT_FALSE(sample_ppp(1.0, w, 1, 60.0, true).stations.empty());
  EXPECT_THROW(sample_ppp(0.0, w, 1), std::invalid_argument);
}

TEST(PlaceDeterministic, Basics) {
  Window const w{2.0, 4.0, 0.0};
  std::vector<Point> const center{{1.0, 2.0}};
  Deployment const d = place_deterministic(center, w);
  EXPECT_EQ(d.stations.size(), 1u);
  EXPECT_DOUBLE_EQ(d.intensity_per_km2, 1.0 / 8.0);
  EXPECT_THROW(place_deterministic(std::vector<Point>{}, w), std::invalid_argument);
  EXPECT_THROW(place_deterministic(std::vector<Point>{{3.0, 1.0}}, w), std::invalid_argument);
}

TEST(AssignCells, ThreeCollinearStations) {
  Network const net = toy::network(toy::three_sites(), toy::three_window(), 0.05);
  ASSERT_EQ(net.cell_count(), 3u);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(net.partition.surface_km2[c], 1.0, 1e-9);
}

TEST(AssignCells, SingleStationOwnsWindow) {
  Window const w{3.0, 2.0, 0.0};
  Network const net = toy::network({{0.3, 1.7}}, w, 0.1);
  EXPECT_NEAR(net.partition.surface_km2[0], w.area_km2(), 1e-9);
}

TEST(AssignCells, PerpendicularBisector) {
  Window const w{2.0, 1.0, 0.0};
  Network const net = toy::network({{0.4, 0.3}, {1.4, 0.8}}, w, 0.02);
  EvalGrid const& g = net.scene.grid;
  for (std::size_t n = 0; n < g.size(); ++n) {
    Point const p = g.node(n);
    double const d0 = distance_km(p, {0.4, 0.3});
    double const d1 = distance_km(p, {1.4, 0.8});
    if (std::abs(d0 - d1) < 1e-9) continue;
    EXPECT_EQ(net.partition.serving[n], d0 < d1 ? 0u : 1u);
  }
}

TEST(AssignCells, MatchesVoronoiOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Window const w{4.0, 3.0, 0.0};
  for (int instance = 0; instance < 20; ++instance) {
    std::vector<Point> sites;
    for (int i = 0; i < 5; ++i) sites.push_back({u(rng) * w.width_km, u(rng) * w.height_km});
    Network const net = toy::network(sites, w, 0.04);
    auto const ref = oracle::nearest_station(sites, net.scene.grid);
    for (std::size_t n = 0; n < ref.size(); ++n) ASSERT_EQ(net.partition.serving[n], ref[n]);
  }
}

TEST(AssignCells, PartitionInvariants) {
  Window const w{8.0, 8.0, 1.0};
  PropagationModel m = toy::omni_model();
  m.shadowing.mode = ShadowingMode::correlated;
  m.shadowing.seed = 4;
  Deployment d = sample_ppp(1.15, w, 3);
  EvalGrid const g = EvalGrid::covering(w, 0.1);
  Network const net = build_network(make_scene(d, g, m));
  double total = 0.0;
  std::size_t nodes = 0;
  for (std::size_t c = 0; c < net.cell_count(); ++c) {
    total += net.partition.surface_km2[c];
    nodes += net.partition.nodes[c].size();
  }
  EXPECT_EQ(nodes, g.size());
  EXPECT_NEAR(total / w.area_km2(), 1.0, 1e-9);
  std::vector<double> scratch(net.gains->station_count());
  for (std::size_t n = 0; n < g.size(); n += 7) {
    auto const row = net.gains->row(n, scratch);
    std::size_t const s = net.partition.serving[n];
    for (std::size_t y = 0; y < row.size(); ++y) ASSERT_LE(row[y], row[s]);
  }
}

TEST(AssignCells, RaisingPowerNeverShrinksCell) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  Window const w{3.0, 3.0, 0.0};
  PropagationModel m = toy::omni_model();
  m.shadowing.mode = ShadowingMode::iid;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> sites;
    for (int i = 0; i < 6; ++i) sites.push_back({u(rng), u(rng)});
    Deployment base = place_deterministic(sites, w);
    EvalGrid const g = EvalGrid::covering(w, 0.05);
    Scene const scene = make_scene(base, g, m);
    Network const before = build_network(scene);
    Scene boosted = scene;
    boosted.deployment.stations[2].power_dbm += 3.0;
    Network const after = build_network(boosted);
    std::set<std::uint32_t> const a(before.partition.nodes[2].begin(), before.partition.nodes[2].end());
    std::set<std::uint32_t> const b(after.partition.nodes[2].begin(), after.partition.nodes[2].end());
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST(AssignCells, TiesGoToLowestIndex) {
  Window const w{2.0, 1.0, 0.0};
  Network const net = toy::network({{1.0, 0.5}, {1.0, 0.5}}, w, 0.1);
  EXPECT_NEAR(net.partition.surface_km2[0], 2.0, 1e-12);
  EXPECT_TRUE(net.partition.nodes[1].empty());
}

TEST(AssignCells, IndependentOfWorkersAndStorage) {
  Window const w{10.0, 10.0, 1.0};
  PropagationModel m = toy::omni_model();
  m.shadowing.mode = ShadowingMode::correlated;
  m.antenna.mode = AntennaMode::trisector;
  Scene const scene = make_scene(sample_ppp(1.15, w, 9), EvalGrid::covering(w, 0.1), m);
  Network const ref = build_network(scene, {GainStorage::materialized, std::size_t{1} << 30, 1});
  Network const par = build_network(scene, {GainStorage::materialized, std::size_t{1} << 30, 4});
  Network const fly = build_network(scene, {GainStorage::on_the_fly, std::size_t{1} << 30, 3});
  EXPECT_TRUE(ref.gains->materialized());
  EXPECT_FALSE(fly.gains->materialized());
  EXPECT_EQ(ref.partition.serving, par.partition.serving);
  EXPECT_EQ(ref.partition.serving, fly.partition.serving);
  Network const tight = build_network(scene, {GainStorage::automatic, 1024, 1});
  EXPECT_FALSE(tight.gains->materialized());
}

TEST(InteriorCells, GuardSelection) {
  Window const w{3.0, 3.0, 0.0};
  Deployment const d = sample_ppp(5.0, w, 1);
  EXPECT_EQ(interior_cells(d).size(), d.stations.size());
  Deployment const single = place_deterministic(std::vector<Point>{{1.5, 1.5}}, Window{3.0, 3.0, 1.4});
  EXPECT_EQ(interior_cells(single), std::vector<std::size_t>{0});
  Deployment const edge = place_deterministic(std::vector<Point>{{0.1, 1.5}}, Window{3.0, 3.0, 1.0});
  EXPECT_THROW(interior_cells(edge), std::runtime_error);
}

TEST(InteriorCells, FractionMatchesInnerArea) {
  Window const w{30.0, 30.0, 3.0};
  double fraction = 0.0;
  int const seeds = 30;
  for (int s = 0; s < seeds; ++s) {
    Deployment const d = sample_ppp(1.15, w, static_cast<std::uint64_t>(s));
    fraction += static_cast<double>(interior_cells(d).size()) / static_cast<double>(d.stations.size());
  }
  EXPECT_NEAR(fraction / seeds, 0.64, 0.01);
}

TEST(DefaultResolution, ScalesWithSpacing) {
  EXPECT_NEAR(default_resolution_km(1.15), 0.05, 1e-15);
  EXPECT_NEAR(default_resolution_km(1.15 / 64.0), 0.4, 1e-12);
  EXPECT_NEAR(default_guard_km(1.0), 3.0, 1e-15);
}
