#pragma once

#include <cstdint>
#include <span>

namespace celldim {

enum class Technology { three_g, four_g };

/// Peak bit-rate as a function of SINR.
///
/// three_g: efficiency * W * E[log2(1 + |H|^2 SINR)] with |H|^2 unit-mean
/// exponential (Rayleigh flat fading).
/// four_g: b * W * log2(1 + SINR / a), a being the SINR gap and b the
/// bandwidth efficiency.
struct RateModel {
  Technology technology = Technology::three_g;
  double bandwidth_hz = 5e6;
  double efficiency = 0.3;
  double gap_a = 3.0;
  double efficiency_b = 1.12;

  void validate() const;
};

/// Downlink SINR from linear powers. `interference_w` already carries the
/// activity factors of the interferers.
inline double sinr(double serving_power_w, double interference_w, double noise_w) {
  return serving_power_w / (noise_w + interference_w);
}

/// SINR at a grid node given the row of received powers there, the serving
/// station and the interference factor phi of every station.
double sinr_at(std::span<double const> received_w, std::size_t serving,
               std::span<double const> factors, double noise_w);

/// e^{1/s} E1(1/s) / ln 2 = E[log2(1 + H s)] for H ~ Exp(1).
double ergodic_bits_per_symbol(double snr);

double peak_rate(RateModel const& model, double sinr);

}  // namespace celldim
