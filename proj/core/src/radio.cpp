#include "celldim/radio.hpp"

#include <cmath>
#include <stdexcept>

#include "celldim/special_functions.hpp"
#include "celldim/units.hpp"

namespace celldim {

void RateModel::validate() const {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("rate: bandwidth must be positive");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw std::invalid_argument("rate: efficiency must be in (0, 1]");
  if (!(gap_a >= 1.0 && efficiency_b > 0.0)) throw std::invalid_argument("rate: need a >= 1 and b > 0");
}

double sinr_at(std::span<double const> received_w, std::size_t serving,
               std::span<double const> factors, double noise_w) {
  double interference = 0.0;
  for (std::size_t y = 0; y < received_w.size(); ++y) {
    if (y != serving) interference += factors[y] * received_w[y];
  }
  return sinr(received_w[serving], interference, noise_w);
}

double ergodic_bits_per_symbol(double snr) {
  if (!(snr > 0.0)) throw std::domain_error("ergodic_bits_per_symbol: snr must be positive");
  if (std::isinf(snr)) return snr;
  double const x = 1.0 / snr;
  if (x == 0.0) return std::log2(snr) - std::numbers::egamma / kLn2;  // snr beyond 1/DBL_MIN
  return expint_e1_scaled(x) / kLn2;
}

double peak_rate(RateModel const& model, double s) {
  switch (model.technology) {
    case Technology::three_g:
      return model.efficiency * model.bandwidth_hz * ergodic_bits_per_symbol(s);
    case Technology::four_g:
      return model.efficiency_b * model.bandwidth_hz * std::log1p(s / model.gap_a) / kLn2;
  }
  return 0.0;
}

}  // namespace celldim
