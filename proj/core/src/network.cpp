#include "celldim/network.hpp"

#include <cmath>
#include <stdexcept>

namespace celldim {

Scene make_scene(Deployment deployment, EvalGrid grid, PropagationModel propagation) {
  propagation.validate();
  auto shadow = std::make_shared<ShadowField const>(
      ShadowField::realize(propagation.shadowing, deployment.stations.size(), grid.lattice()));
  return Scene{std::move(deployment), grid, std::move(propagation), std::move(shadow)};
}

Network build_network(Scene scene, NetworkOptions const& options) {
  Network net;
  net.gains = std::make_shared<GainTable const>(scene.deployment, scene.grid, scene.propagation,
                                                scene.shadow, options.storage, options.workers,
                                                options.memory_budget_bytes);
  net.partition = assign_cells(*net.gains, scene.propagation.link, options.workers);
  net.interior = interior_cells(scene.deployment);
  net.scene = std::move(scene);
  return net;
}

std::vector<Network> realize_networks(HomogeneousSetup const& setup, NetworkOptions const& options) {
  if (!(setup.intensity_per_km2 > 0.0)) throw std::invalid_argument("setup: intensity must be positive");
  if (setup.realizations == 0) throw std::invalid_argument("setup: need at least one realization");
  double const spacing = 1.0 / std::sqrt(setup.intensity_per_km2);
  Window window;
  window.width_km = setup.window_width_km > 0.0 ? setup.window_width_km : 20.0 * spacing;
  window.height_km = setup.window_height_km > 0.0 ? setup.window_height_km : window.width_km;
  window.guard_km = setup.guard_km >= 0.0 ? setup.guard_km : default_guard_km(setup.intensity_per_km2);
  double const resolution =
      setup.resolution_km > 0.0 ? setup.resolution_km : default_resolution_km(setup.intensity_per_km2);
  EvalGrid const grid = EvalGrid::covering(window, resolution);

  std::vector<Network> out;
  out.reserve(setup.realizations);
  for (std::size_t r = 0; r < setup.realizations; ++r) {
    Deployment d = sample_ppp(setup.intensity_per_km2, window, mix_seed(setup.seed, r), setup.power_dbm);
    PropagationModel model = setup.propagation;
    model.shadowing.seed = mix_seed(setup.propagation.shadowing.seed, r);
    out.push_back(build_network(make_scene(std::move(d), grid, std::move(model)), options));
  }
  return out;
}

}  // namespace celldim
