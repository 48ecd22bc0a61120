#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "celldim/network.hpp"
#include "celldim/radio.hpp"

namespace celldim {

/// Poisson arrivals of gamma users / km^2 / s, each carrying mu_inv bits.
struct TrafficModel {
  double gamma_per_km2_s = 0.0;
  double mu_inv_bits = 0.0;

  double rho_surface() const { return gamma_per_km2_s * mu_inv_bits; }  // bit/s/km^2
};

/// Stationary processor-sharing metrics of one cell.
///
/// theta = rho / rho_c, r = max(rho_c - rho, 0), N = rho / r (infinite when
/// the cell is overloaded), p = min(theta, 1). `inv_rate_integral` is the
/// discretized integral of 1/R over the cell, km^2 s / bit.
struct CellMetrics {
  double surface_km2 = 0.0;
  double inv_rate_integral = 0.0;
  double rho = 0.0;    // bit/s
  double rho_c = 0.0;  // bit/s
  double r = 0.0;      // bit/s
  double n_users = 0.0;
  double theta = 0.0;
  double p_busy = 0.0;

  bool users_unbounded() const;
};

enum class LoadInit { all_one, all_zero };

struct SolverConfig {
  double tol = 1e-4;
  int max_iter = 200;
  LoadInit init = LoadInit::all_one;
  double damping = 1.0;
  /// Drop to damping 0.5 when the residual grows on two consecutive sweeps.
  bool oscillation_fallback = true;
  bool record_history = false;
  unsigned workers = 1;

  void validate() const;
};

struct LoadSolution {
  std::vector<double> theta;
  std::vector<CellMetrics> cells;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double damping = 1.0;
  /// theta after every sweep when SolverConfig::record_history is set.
  std::vector<std::vector<double>> history;
};

/// Network-average "mean cell". rho_c_bar = rho_bar / theta_bar,
/// r_bar = max(rho_c_bar - rho_bar, 0), N_bar = rho_bar / r_bar.
struct MeanCell {
  double rho_bar = 0.0;
  double theta_bar = 0.0;
  double rho_c_bar = 0.0;
  double r_bar = 0.0;
  double n_bar = 0.0;
};

double cell_traffic(double rho_surface, double cell_surface_km2);

/// Harmonic mean of node rates with area weights: |V| [sum w / R]^-1.
/// Returns 0 if any rate is zero.
double critical_traffic(std::span<double const> node_rates, std::span<double const> node_weights);

CellMetrics cell_metrics(double rho_cell, double rho_c_cell);

/// One application of the load map: for each cell, the integral of 1/R over
/// the cell with interferers weighted by `factors`.
std::vector<double> load_integrals(Network const& network, RateModel const& rate, double noise_w,
                                   std::span<double const> factors, unsigned workers = 1);

/// Jacobi fixed-point iteration of theta(X) = rho * int_V(X) 1/R(SINR) with
/// interference factors min(theta(Y), 1). Never throws on non-convergence:
/// check `converged`.
LoadSolution solve_loads(Network const& network, RateModel const& rate, double noise_w,
                         double rho_surface, SolverConfig const& solver,
                         std::span<double const> initial = {});

/// Metrics of every cell given its load integral.
std::vector<CellMetrics> metrics_from_integrals(Network const& network, std::span<double const> integrals,
                                                double rho_surface);

/// Unweighted average over the given cells. At zero traffic rho_c_bar is
/// the zero-load limit mean(|V|) / mean(int 1/R).
MeanCell network_average(std::span<CellMetrics const> cells, std::span<std::size_t const> interior);

/// One point of a mean-cell curve together with solver diagnostics.
struct CurvePoint {
  MeanCell cell;
  bool converged = true;
  int iterations = 0;
  double residual = 0.0;
};

enum class TrafficAxis {
  per_cell,     // values are mean per-cell demand rho_bar, bit/s
  per_surface,  // values are surface density rho, bit/s/km^2
};

/// Mean interior cell area pooled over realizations.
double mean_interior_surface(std::span<Network const> networks);

/// Solves every realization at the given traffic and pools all interior
/// cells into one mean cell. In per-cell mode the surface density is
/// rho_bar / mean_interior_surface, so the pooled rho_bar equals the input.
CurvePoint mean_cell_point(std::span<Network const> networks, RateModel const& rate, double noise_w,
                           double traffic, TrafficAxis axis, SolverConfig const& solver);

std::vector<CurvePoint> traffic_curve(std::span<Network const> networks, RateModel const& rate,
                                      double noise_w, std::span<double const> traffic, TrafficAxis axis,
                                      SolverConfig const& solver);

}  // namespace celldim
