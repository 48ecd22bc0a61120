#include "celldim/shadowing.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>

#include "celldim/units.hpp"

namespace celldim {
namespace {

// Circulant padding, in correlation lengths; exp(-10) is below float resolution
// of the field once the marginal is exponentiated.
constexpr double kPaddingCorrLengths = 10.0;

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer make_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

double unit_from_bits(std::uint64_t bits) {
  // 53 random bits -> (0, 1)
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double hashed_normal(std::uint64_t seed, std::size_t station, std::size_t node) {
  std::uint64_t const h = mix_seed(mix_seed(seed, station), node);
  double const u1 = unit_from_bits(h);
  double const u2 = unit_from_bits(mix_seed(h, 0x5bd1e995));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<float> correlated_gains(ShadowingConfig const& config, std::size_t station_count,
                                    LatticeShape const& lattice) {
  std::size_t const nx = lattice.nx;
  std::size_t const ny = lattice.ny;
  auto padded = [&](std::size_t n, double step) {
    return n + static_cast<std::size_t>(std::ceil(kPaddingCorrLengths * config.corr_dist_km / step));
  };
  std::size_t const mx = padded(nx, lattice.dx_km);
  std::size_t const my = padded(ny, lattice.dy_km);
  std::size_t const m = mx * my;

  // Eigenvalues of the circulant covariance (rows are y, columns are x).
  auto spectrum = make_buffer(m);
  for (std::size_t j = 0; j < my; ++j) {
    double const ry = lattice.dy_km * static_cast<double>(std::min(j, my - j));
    for (std::size_t i = 0; i < mx; ++i) {
      double const rx = lattice.dx_km * static_cast<double>(std::min(i, mx - i));
      spectrum[j * mx + i][0] = std::exp(-std::hypot(rx, ry) / config.corr_dist_km);
      spectrum[j * mx + i][1] = 0.0;
    }
  }
  fftw_plan eig_plan = fftw_plan_dft_2d(static_cast<int>(my), static_cast<int>(mx), spectrum.get(),
                                        spectrum.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(eig_plan);
  fftw_destroy_plan(eig_plan);

  std::vector<double> amplitude(m);
  for (std::size_t k = 0; k < m; ++k) {
    amplitude[k] = std::sqrt(std::max(spectrum[k][0], 0.0) / static_cast<double>(m));
  }

  auto work = make_buffer(m);
  fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(my), static_cast<int>(mx), work.get(),
                                    work.get(), FFTW_FORWARD, FFTW_ESTIMATE);

  double const sigma = config.sigma_ln();
  double const shift = -0.5 * sigma * sigma;
  std::size_t const nodes = lattice.size();
  std::vector<float> gains(station_count * nodes);

  // Real and imaginary parts of one transform are two independent fields.
  for (std::size_t pair = 0; 2 * pair < station_count; ++pair) {
    std::mt19937_64 rng(mix_seed(config.seed, pair));
    std::normal_distribution<double> normal;
    for (std::size_t k = 0; k < m; ++k) {
      work[k][0] = amplitude[k] * normal(rng);
      work[k][1] = amplitude[k] * normal(rng);
    }
    fftw_execute(plan);
    for (std::size_t part = 0; part < 2; ++part) {
      std::size_t const station = 2 * pair + part;
      if (station >= station_count) break;
      float* out = gains.data() + station * nodes;
      for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
          double const z = work[iy * mx + ix][part];
          out[ix + nx * iy] = static_cast<float>(std::exp(sigma * z + shift));
        }
      }
    }
  }
  fftw_destroy_plan(plan);
  return gains;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void ShadowingConfig::validate() const {
  if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db)) {
    throw std::invalid_argument("shadowing: sigma_dB must be non-negative");
  }
  if (mode == ShadowingMode::correlated && !(corr_dist_km > 0.0)) {
    throw std::invalid_argument("shadowing: correlation distance must be positive");
  }
}

double ShadowingConfig::sigma_ln() const { return sigma_db * kLn10 / 10.0; }

ShadowField ShadowField::realize(ShadowingConfig const& config, std::size_t station_count,
                                 LatticeShape const& lattice) {
  config.validate();
  ShadowField field;
  field.mode_ = config.sigma_db == 0.0 ? ShadowingMode::off : config.mode;
  field.station_count_ = station_count;
  field.node_count_ = lattice.size();
  field.seed_ = config.seed;
  field.sigma_ln_ = config.sigma_ln();
  if (field.mode_ == ShadowingMode::correlated) {
    field.gains_ = correlated_gains(config, station_count, lattice);
  }
  return field;
}

double ShadowField::gain(std::size_t station, std::size_t node) const {
  switch (mode_) {
    case ShadowingMode::off:
      return 1.0;
    case ShadowingMode::iid:
      return std::exp(sigma_ln_ * hashed_normal(seed_, station, node) - 0.5 * sigma_ln_ * sigma_ln_);
    case ShadowingMode::correlated:
      return gains_[station * node_count_ + node];
  }
  return 1.0;
}

double draw_lognormal_shadow(ShadowingConfig const& config, std::mt19937_64& rng) {
  if (config.mode == ShadowingMode::off || config.sigma_db == 0.0) return 1.0;
  double const sigma = config.sigma_ln();
  std::normal_distribution<double> normal;
  return std::exp(sigma * normal(rng) - 0.5 * sigma * sigma);
}

}  // namespace celldim
