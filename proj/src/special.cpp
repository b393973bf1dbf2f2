#include "pcervm/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pcervm {

namespace {

// Bernoulli-number coefficients B_{2n}/(2n(2n-1)) for the Stirling series.
constexpr double kStirling[] = {
    1.0 / 12.0,     -1.0 / 360.0,    1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

void require_positive(double x, const char* fn) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(fn) + ": argument must be positive");
  }
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= std::log(x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  constexpr double half_log_2pi = 0.91893853320467274178;
  return shift + (x - 0.5) * std::log(x) - x + half_log_2pi + series;
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_2n / (2n x^{2n})
  constexpr double coeff[] = {
      -1.0 / 12.0, 1.0 / 120.0, -1.0 / 252.0, 1.0 / 240.0,
      -1.0 / 132.0, 691.0 / 32760.0, -1.0 / 12.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double p = inv2;
  for (double c : coeff) {
    series += c * p;
    p *= inv2;
  }
  return shift + std::log(x) - 0.5 * inv + series;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  // psi'(x) ~ 1/x + 1/(2x^2) + sum B_2n / x^{2n+1}
  constexpr double coeff[] = {
      1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double p = inv * inv2;
  for (double c : coeff) {
    series += c * p;
    p *= inv2;
  }
  return shift + inv + 0.5 * inv2 + series;
}

}  // namespace pcervm
