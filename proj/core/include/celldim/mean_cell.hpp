#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "celldim/geometry.hpp"
#include "celldim/propagation.hpp"
#include "celldim/radio.hpp"

namespace celldim {

/// Powers seen at one typical location: the serving (strongest pilot)
/// station and the sum over all other stations, both at full power.
struct TypicalSample {
  double serving_w = 0.0;
  double others_w = 0.0;
};

struct MeanCellMcConfig {
  std::size_t samples = 2000;
  /// Sampling window side, in units of 1 / sqrt(lambda).
  double window_factor = 30.0;
  std::uint64_t seed = 3;
  double tol = 1e-6;
  int max_iter = 2000;
  double damping = 1.0;
  unsigned workers = 1;
};

/// Fresh Poisson deployment per sample, observed at the window centre.
std::vector<TypicalSample> sample_typical_ppp(double intensity_per_km2, PropagationModel const& model,
                                              double power_dbm, MeanCellMcConfig const& config);

/// Fixed deployment observed at locations drawn uniformly over its window.
std::vector<TypicalSample> sample_typical_fixed(Deployment const& deployment, PropagationModel const& model,
                                                MeanCellMcConfig const& config);

struct MeanCellAnalytic {
  double theta_bar = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Scalar fixed point theta = rho_bar E[1/R(S / (N + min(theta, 1) I))],
/// the expectation taken over the samples; rho_bar = rho / lambda.
MeanCellAnalytic solve_mean_cell(std::span<TypicalSample const> samples, double rho_bar,
                                 RateModel const& rate, double noise_w, MeanCellMcConfig const& config);

MeanCellAnalytic mean_cell_analytic(double intensity_per_km2, double rho_surface,
                                    PropagationModel const& model, double power_dbm,
                                    RateModel const& rate, double noise_w, MeanCellMcConfig const& config);

}  // namespace celldim
