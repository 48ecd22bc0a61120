#include "celldim/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace celldim {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 1000;

double e1_series(double x) {
  // -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
  double sum = 0.0;
  double term = 1.0;
  for (int k = 1; k <= kMaxIter; ++k) {
    term *= -x / k;
    double const contrib = -term / k;
    sum += contrib;
    if (std::abs(contrib) < kEps * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(x) + sum;
}

// Returns e^x E1(x) for x >= 1.
double e1_scaled_continued_fraction(double x) {
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    double const an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    double const del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("expint_e1: continued fraction did not converge");
}

void check_argument(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("expint_e1: argument must be positive and finite");
  }
}

}  // namespace

double expint_e1(double x) {
  check_argument(x);
  if (x <= 1.0) return e1_series(x);
  return std::exp(-x) * e1_scaled_continued_fraction(x);
}

double expint_e1_scaled(double x) {
  check_argument(x);
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_continued_fraction(x);
}

}  // namespace celldim
