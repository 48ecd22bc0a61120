#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "celldim/network.hpp"
#include "celldim/performance.hpp"
#include "celldim/radio.hpp"
#include "celldim/special_functions.hpp"
#include "celldim/units.hpp"

using namespace celldim;

namespace {

HomogeneousSetup urban(double window_spacings, ShadowingMode shadowing) {
  HomogeneousSetup h;
  h.window_width_km = h.window_height_km = window_spacings / std::sqrt(h.intensity_per_km2);
  h.propagation.shadowing.mode = shadowing;
  h.propagation.antenna.mode = AntennaMode::trisector;
  return h;
}

void BM_ExpintE1(benchmark::State& state) {
  std::vector<double> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(std::pow(10.0, -3.0 + 6.0 * i / 255.0));
  for (auto _ : state) {
    for (double x : xs) benchmark::DoNotOptimize(expint_e1_scaled(x));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}
BENCHMARK(BM_ExpintE1);

void BM_PeakRate3G(benchmark::State& state) {
  RateModel const rate;
  double s = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(peak_rate(rate, s));
    s = s < 1e3 ? s * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_PeakRate3G);

void BM_BuildNetwork(benchmark::State& state) {
  HomogeneousSetup const h =
      urban(static_cast<double>(state.range(0)), state.range(1) ? ShadowingMode::correlated : ShadowingMode::off);
  for (auto _ : state) benchmark::DoNotOptimize(realize_networks(h));
}
BENCHMARK(BM_BuildNetwork)->Args({8, 0})->Args({8, 1})->Args({16, 1})->Unit(benchmark::kMillisecond);

void BM_SolveLoads(benchmark::State& state) {
  std::vector<Network> const nets = realize_networks(urban(static_cast<double>(state.range(0)), ShadowingMode::correlated));
  RateModel const rate;
  double const noise_w = dbm_to_watt(-96.0);
  double const rho = static_cast<double>(state.range(1)) * 1e3;
  int iterations = 0;
  for (auto _ : state) {
    LoadSolution const sol = solve_loads(nets.front(), rate, noise_w, rho, SolverConfig{});
    iterations = sol.iterations;
  }
  state.counters["sweeps"] = iterations;
}
BENCHMARK(BM_SolveLoads)->Args({8, 300})->Args({8, 900})->Args({16, 900})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
