#include "celldim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace celldim {

void Window::validate() const {
  if (!(width_km > 0.0 && height_km > 0.0)) {
    throw std::invalid_argument("window: width and height must be positive");
  }
  if (!(guard_km >= 0.0) || !(2.0 * guard_km < std::min(width_km, height_km))) {
    throw std::invalid_argument("window: guard must lie in [0, min(width, height) / 2)");
  }
}

bool Window::contains(Point p) const {
  return p.x_km >= 0.0 && p.x_km <= width_km && p.y_km >= 0.0 && p.y_km <= height_km;
}

bool Window::in_interior(Point p) const {
  return p.x_km >= guard_km && p.x_km <= width_km - guard_km && p.y_km >= guard_km &&
         p.y_km <= height_km - guard_km;
}

EvalGrid EvalGrid::covering(Window const& window, double resolution_km) {
  window.validate();
  if (!(resolution_km > 0.0)) throw std::invalid_argument("grid: resolution must be positive");
  EvalGrid g;
  g.nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(window.width_km / resolution_km)));
  g.ny = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(window.height_km / resolution_km)));
  g.dx_km = window.width_km / static_cast<double>(g.nx);
  g.dy_km = window.height_km / static_cast<double>(g.ny);
  return g;
}

double default_resolution_km(double intensity_per_km2) {
  return 0.05 * std::sqrt(1.15 / intensity_per_km2);
}

double default_guard_km(double intensity_per_km2) { return 3.0 / std::sqrt(intensity_per_km2); }

Deployment sample_ppp(double intensity_per_km2, Window const& window, std::uint64_t seed,
                      double power_dbm, bool retry_on_empty) {
  if (!(intensity_per_km2 > 0.0)) throw std::invalid_argument("sample_ppp: intensity must be positive");
  window.validate();

  Deployment d;
  d.window = window;
  d.intensity_per_km2 = intensity_per_km2;
  d.seed = seed;

  for (std::uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, attempt));
    std::poisson_distribution<long> count_dist(intensity_per_km2 * window.area_km2());
    std::uniform_real_distribution<double> ux(0.0, window.width_km);
    std::uniform_real_distribution<double> uy(0.0, window.height_km);
    long const count = count_dist(rng);
    d.stations.clear();
    d.stations.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      double const x = ux(rng);
      double const y = uy(rng);
      d.stations.push_back(Station{{x, y}, power_dbm, 0});
    }
    if (!d.stations.empty()) break;
    if (!retry_on_empty) throw std::runtime_error("sample_ppp: no station drawn");
  }
  return d;
}

Deployment place_deterministic(std::span<Point const> positions, Window const& window,
                               double power_dbm) {
  window.validate();
  if (positions.empty()) throw std::invalid_argument("place_deterministic: no positions");
  Deployment d;
  d.window = window;
  for (Point const p : positions) {
    if (!window.contains(p)) throw std::invalid_argument("place_deterministic: position outside window");
    d.stations.push_back(Station{p, power_dbm, 0});
  }
  d.intensity_per_km2 = static_cast<double>(positions.size()) / window.area_km2();
  return d;
}

std::vector<std::size_t> interior_cells(Deployment const& deployment) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < deployment.stations.size(); ++i) {
    if (deployment.window.in_interior(deployment.stations[i].position)) out.push_back(i);
  }
  if (out.empty()) {
    throw std::runtime_error("interior_cells: no station inside the guarded window; enlarge the window");
  }
  return out;
}

CellPartition make_partition(std::vector<std::uint32_t> serving, std::size_t cell_count,
                             double node_weight_km2) {
  CellPartition p;
  p.nodes.resize(cell_count);
  p.surface_km2.assign(cell_count, 0.0);
  for (std::size_t n = 0; n < serving.size(); ++n) p.nodes[serving[n]].push_back(static_cast<std::uint32_t>(n));
  for (std::size_t c = 0; c < cell_count; ++c) {
    p.surface_km2[c] = node_weight_km2 * static_cast<double>(p.nodes[c].size());
  }
  p.serving = std::move(serving);
  return p;
}

}  // namespace celldim
