#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace celldim {

enum class ShadowingMode { off, iid, correlated };

struct ShadowingConfig {
  ShadowingMode mode = ShadowingMode::off;
  double sigma_db = 9.6;
  double corr_dist_km = 0.05;
  std::uint64_t seed = 1;

  void validate() const;
  /// Standard deviation of the natural log of the shadowing factor.
  double sigma_ln() const;
};

/// Regular lattice layout used to lay a shadowing field over grid nodes.
/// Node index is ix + nx * iy.
struct LatticeShape {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx_km = 0.0;
  double dy_km = 0.0;

  std::size_t size() const { return nx * ny; }
};

/// Unit-mean lognormal shadowing realized for every (station, node) pair.
///
/// off: 1 everywhere. iid: an independent draw per pair, derived from a
/// counter-based hash so nothing is stored. correlated: one Gaussian field
/// per station with covariance exp(-d / corr_dist) in the log domain,
/// generated by circulant embedding on the lattice and stored as float.
///
/// The field only depends on node indices, so carrying it to a dilated grid
/// realizes S'(y) = S(y / alpha) exactly.
class ShadowField {
 public:
  ShadowField() = default;

  static ShadowField realize(ShadowingConfig const& config, std::size_t station_count,
                             LatticeShape const& lattice);

  ShadowingMode mode() const { return mode_; }
  std::size_t station_count() const { return station_count_; }
  std::size_t node_count() const { return node_count_; }

  /// Linear shadowing gain S of `station` at lattice node `node`.
  double gain(std::size_t station, std::size_t node) const;

 private:
  ShadowingMode mode_ = ShadowingMode::off;
  std::size_t station_count_ = 0;
  std::size_t node_count_ = 0;
  std::uint64_t seed_ = 0;
  double sigma_ln_ = 0.0;
  // correlated mode: gains_[station * node_count_ + node]
  std::vector<float> gains_;
};

/// One unit-mean lognormal draw; used off-grid (single typical location).
double draw_lognormal_shadow(ShadowingConfig const& config, std::mt19937_64& rng);

/// SplitMix64 finalizer; the mixing step behind every derived seed.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace celldim
