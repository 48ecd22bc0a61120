#pragma once

#include <cmath>
#include <numbers>

namespace celldim {

/// Planar location, kilometres.
struct Point {
  double x_km = 0.0;
  double y_km = 0.0;
};

inline double distance_km(Point a, Point b) {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

inline constexpr double kHzPerMHz = 1e6;
inline constexpr double kBitPerKbit = 1e3;

inline constexpr double kLn10 = std::numbers::ln10;
inline constexpr double kLn2 = std::numbers::ln2;

}  // namespace celldim
