#include "celldim/performance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "celldim/parallel.hpp"

namespace celldim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sum_{y != skip} factors[y] * row[y], four partial sums.
double interference_excluding(std::span<double const> row, std::span<double const> factors,
                              std::size_t skip) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  auto accumulate = [&](std::size_t begin, std::size_t end) {
    std::size_t y = begin;
    for (; y + 4 <= end; y += 4) {
      acc[0] += factors[y] * row[y];
      acc[1] += factors[y + 1] * row[y + 1];
      acc[2] += factors[y + 2] * row[y + 2];
      acc[3] += factors[y + 3] * row[y + 3];
    }
    for (; y < end; ++y) acc[0] += factors[y] * row[y];
  };
  accumulate(0, skip);
  accumulate(skip + 1, row.size());
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double update_gap(double a, double b) {
  if (a == b) return 0.0;  // also covers matching infinities
  return std::abs(a - b);
}

}  // namespace

bool CellMetrics::users_unbounded() const { return std::isinf(n_users); }

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("solver: max_iter must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("solver: damping must be in (0, 1]");
}

double cell_traffic(double rho_surface, double cell_surface_km2) {
  if (rho_surface < 0.0 || cell_surface_km2 < 0.0) {
    throw std::invalid_argument("cell_traffic: inputs must be non-negative");
  }
  return rho_surface * cell_surface_km2;
}

double critical_traffic(std::span<double const> node_rates, std::span<double const> node_weights) {
  if (node_rates.size() != node_weights.size()) {
    throw std::invalid_argument("critical_traffic: rates and weights differ in length");
  }
  double surface = 0.0;
  double inverse = 0.0;
  for (std::size_t i = 0; i < node_rates.size(); ++i) {
    if (!(node_rates[i] > 0.0)) return 0.0;
    surface += node_weights[i];
    inverse += node_weights[i] / node_rates[i];
  }
  if (inverse == 0.0) return 0.0;
  return surface / inverse;
}

CellMetrics cell_metrics(double rho_cell, double rho_c_cell) {
  if (rho_cell < 0.0 || rho_c_cell < 0.0) {
    throw std::invalid_argument("cell_metrics: traffic values must be non-negative");
  }
  CellMetrics m;
  m.rho = rho_cell;
  m.rho_c = rho_c_cell;
  m.r = std::max(rho_c_cell - rho_cell, 0.0);
  if (rho_cell == 0.0) {
    m.theta = 0.0;
    m.n_users = 0.0;
  } else {
    m.theta = rho_c_cell > 0.0 ? rho_cell / rho_c_cell : kInf;
    m.n_users = m.r > 0.0 ? rho_cell / m.r : kInf;
  }
  m.p_busy = std::min(m.theta, 1.0);
  return m;
}

std::vector<double> load_integrals(Network const& network, RateModel const& rate, double noise_w,
                                   std::span<double const> factors, unsigned workers) {
  GainTable const& gains = *network.gains;
  std::size_t const nodes = gains.node_count();
  std::size_t const m = gains.station_count();
  if (factors.size() != m) throw std::invalid_argument("load_integrals: one factor per station required");

  std::vector<double> inverse_rate(nodes);
  unsigned const w = std::max(1u, workers);
  std::size_t const block = (nodes + w - 1) / w;
  parallel_for(w, w, [&](std::size_t b) {
    std::vector<double> scratch(gains.materialized() ? 0 : m);
    std::size_t const end = std::min(nodes, (b + 1) * block);
    for (std::size_t n = b * block; n < end; ++n) {
      auto const row = gains.row(n, scratch);
      std::size_t const serving = network.partition.serving[n];
      double const s = sinr(row[serving], interference_excluding(row, factors, serving), noise_w);
      double const r = s > 0.0 ? peak_rate(rate, s) : 0.0;
      inverse_rate[n] = r > 0.0 ? 1.0 / r : kInf;
    }
  });

  double const weight = gains.grid().node_weight_km2();
  std::vector<double> integrals(m, 0.0);
  for (std::size_t c = 0; c < m; ++c) {
    double sum = 0.0;
    for (std::uint32_t const n : network.partition.nodes[c]) sum += inverse_rate[n];
    integrals[c] = weight * sum;
  }
  return integrals;
}

std::vector<CellMetrics> metrics_from_integrals(Network const& network, std::span<double const> integrals,
                                                double rho_surface) {
  std::vector<CellMetrics> cells(integrals.size());
  for (std::size_t c = 0; c < integrals.size(); ++c) {
    double const surface = network.partition.surface_km2[c];
    double const rho_c = integrals[c] > 0.0 ? surface / integrals[c] : 0.0;
    CellMetrics m = cell_metrics(cell_traffic(rho_surface, surface), rho_c);
    m.surface_km2 = surface;
    m.inv_rate_integral = integrals[c];
    cells[c] = m;
  }
  return cells;
}

LoadSolution solve_loads(Network const& network, RateModel const& rate, double noise_w,
                         double rho_surface, SolverConfig const& solver,
                         std::span<double const> initial) {
  solver.validate();
  rate.validate();
  if (rho_surface < 0.0) throw std::invalid_argument("solve_loads: traffic must be non-negative");
  std::size_t const m = network.cell_count();

  LoadSolution out;
  if (!initial.empty()) {
    if (initial.size() != m) throw std::invalid_argument("solve_loads: initial loads size mismatch");
    out.theta.assign(initial.begin(), initial.end());
  } else {
    out.theta.assign(m, solver.init == LoadInit::all_one ? 1.0 : 0.0);
  }
  out.damping = solver.damping;

  std::vector<double> factors(m);
  std::vector<double> integrals;
  double previous = kInf;
  int growth = 0;
  for (int it = 1; it <= solver.max_iter; ++it) {
    for (std::size_t c = 0; c < m; ++c) factors[c] = std::min(out.theta[c], 1.0);
    integrals = load_integrals(network, rate, noise_w, factors, solver.workers);

    double residual = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      double const next = rho_surface * integrals[c];
      residual = std::max(residual, update_gap(next, out.theta[c]));
      out.theta[c] = out.damping == 1.0 ? next : (1.0 - out.damping) * out.theta[c] + out.damping * next;
    }
    out.iterations = it;
    out.residual = residual;
    if (solver.record_history) out.history.push_back(out.theta);
    if (residual < solver.tol) {
      out.converged = true;
      break;
    }
    growth = residual > previous ? growth + 1 : 0;
    previous = residual;
    if (solver.oscillation_fallback && growth >= 2 && out.damping > 0.5) {
      out.damping = 0.5;
      growth = 0;
    }
  }
  out.cells = metrics_from_integrals(network, integrals, rho_surface);
  return out;
}

MeanCell network_average(std::span<CellMetrics const> cells, std::span<std::size_t const> interior) {
  if (interior.empty()) throw std::invalid_argument("network_average: empty cell set");
  double rho = 0.0;
  double theta = 0.0;
  double surface = 0.0;
  double integral = 0.0;
  for (std::size_t const c : interior) {
    rho += cells[c].rho;
    theta += cells[c].theta;
    surface += cells[c].surface_km2;
    integral += cells[c].inv_rate_integral;
  }
  double const n = static_cast<double>(interior.size());
  MeanCell mc;
  mc.rho_bar = rho / n;
  mc.theta_bar = theta / n;
  if (mc.theta_bar > 0.0) {
    mc.rho_c_bar = mc.rho_bar / mc.theta_bar;
  } else if (mc.rho_bar == 0.0) {
    mc.rho_c_bar = integral > 0.0 ? surface / integral : 0.0;
  } else {
    throw std::invalid_argument("network_average: zero load with positive traffic");
  }
  mc.r_bar = std::max(mc.rho_c_bar - mc.rho_bar, 0.0);
  if (mc.rho_bar == 0.0) {
    mc.n_bar = 0.0;
  } else {
    mc.n_bar = mc.r_bar > 0.0 ? mc.rho_bar / mc.r_bar : kInf;
  }
  return mc;
}

double mean_interior_surface(std::span<Network const> networks) {
  double surface = 0.0;
  std::size_t count = 0;
  for (Network const& net : networks) {
    for (std::size_t const c : net.interior) surface += net.partition.surface_km2[c];
    count += net.interior.size();
  }
  if (count == 0) throw std::invalid_argument("mean_interior_surface: no interior cells");
  return surface / static_cast<double>(count);
}

CurvePoint mean_cell_point(std::span<Network const> networks, RateModel const& rate, double noise_w,
                           double traffic, TrafficAxis axis, SolverConfig const& solver) {
  if (networks.empty()) throw std::invalid_argument("mean_cell_point: no networks");
  double const rho_surface =
      axis == TrafficAxis::per_cell ? traffic / mean_interior_surface(networks) : traffic;

  CurvePoint point;
  std::vector<CellMetrics> pooled;
  for (Network const& net : networks) {
    LoadSolution const sol = solve_loads(net, rate, noise_w, rho_surface, solver);
    point.converged = point.converged && sol.converged;
    point.iterations = std::max(point.iterations, sol.iterations);
    point.residual = std::max(point.residual, sol.residual);
    for (std::size_t const c : net.interior) pooled.push_back(sol.cells[c]);
  }
  std::vector<std::size_t> all(pooled.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  point.cell = network_average(pooled, all);
  return point;
}

std::vector<CurvePoint> traffic_curve(std::span<Network const> networks, RateModel const& rate,
                                      double noise_w, std::span<double const> traffic, TrafficAxis axis,
                                      SolverConfig const& solver) {
  std::vector<CurvePoint> out;
  out.reserve(traffic.size());
  for (double const t : traffic) out.push_back(mean_cell_point(networks, rate, noise_w, t, axis, solver));
  return out;
}

}  // namespace celldim
