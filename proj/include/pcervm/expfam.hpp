#pragma once

// Canonical-form exponential families used by the variational engine.
// A single family-tagged parameter type keeps the generic formulas
// (log-normalizer, moments, entropy) in one place.

#include <array>
#include <cstddef>

namespace pcervm {

enum class Family { Gaussian, Gamma, Bernoulli, Beta };

const char* family_name(Family f);

struct NaturalParam {
  Family family;
  std::array<double, 2> eta{0.0, 0.0};

  std::size_t dim() const { return family == Family::Bernoulli ? 1 : 2; }

  // Standard-parameter constructors.
  static NaturalParam gaussian(double mean, double precision);   // eta = (m*rho, -rho/2)
  static NaturalParam gamma(double shape, double rate);          // eta = (kappa-1, -lambda)
  static NaturalParam bernoulli(double prob);                    // eta = logit(prob)
  static NaturalParam bernoulli_logit(double eta);
  static NaturalParam beta(double r, double s);                  // eta = (r, s)

  // Standard-parameter accessors (inverse of the above maps).
  double gaussian_mean() const { return -0.5 * eta[0] / eta[1]; }
  double gaussian_precision() const { return -2.0 * eta[1]; }
  double gamma_shape() const { return eta[0] + 1.0; }
  double gamma_rate() const { return -eta[1]; }
  double bernoulli_prob() const;
  double beta_r() const { return eta[0]; }
  double beta_s() const { return eta[1]; }

  // Throws std::invalid_argument naming the family on a domain violation.
  void validate() const;
};

double log_normalizer(const NaturalParam& p);

// E[R(theta)] = grad_eta A(eta).
std::array<double, 2> grad_log_normalizer(const NaturalParam& p);

// Differential entropy (discrete for Bernoulli).
double entropy(const NaturalParam& p);

// Overflow-safe logistic function; the argument is clamped to [-500, 500].
double sigmoid(double x);

}  // namespace pcervm
