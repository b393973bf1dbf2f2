#include "pcervm/expfam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pcervm/special.hpp"

namespace pcervm {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;

[[noreturn]] void invalid(Family f, const char* what) {
  throw std::invalid_argument(std::string(family_name(f)) + ": " + what);
}
}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Gaussian: return "Gaussian";
    case Family::Gamma: return "Gamma";
    case Family::Bernoulli: return "Bernoulli";
    case Family::Beta: return "Beta";
  }
  return "?";
}

double sigmoid(double x) {
  if (x > 500.0) x = 500.0;
  if (x < -500.0) x = -500.0;
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

NaturalParam NaturalParam::gaussian(double mean, double precision) {
  return {Family::Gaussian, {mean * precision, -0.5 * precision}};
}

NaturalParam NaturalParam::gamma(double shape, double rate) {
  return {Family::Gamma, {shape - 1.0, -rate}};
}

NaturalParam NaturalParam::bernoulli(double prob) {
  return {Family::Bernoulli, {std::log(prob / (1.0 - prob)), 0.0}};
}

NaturalParam NaturalParam::bernoulli_logit(double eta) {
  return {Family::Bernoulli, {eta, 0.0}};
}

NaturalParam NaturalParam::beta(double r, double s) {
  return {Family::Beta, {r, s}};
}

double NaturalParam::bernoulli_prob() const { return sigmoid(eta[0]); }

void NaturalParam::validate() const {
  switch (family) {
    case Family::Gaussian:
      if (!(eta[1] < 0.0)) invalid(family, "eta2 must be negative");
      break;
    case Family::Gamma:
      if (!(eta[0] > -1.0)) invalid(family, "eta1 must exceed -1");
      if (!(eta[1] < 0.0)) invalid(family, "eta2 must be negative");
      break;
    case Family::Bernoulli:
      if (!std::isfinite(eta[0])) invalid(family, "eta must be finite");
      break;
    case Family::Beta:
      if (!(eta[0] > 0.0)) invalid(family, "eta1 must be positive");
      if (!(eta[1] > 0.0)) invalid(family, "eta2 must be positive");
      break;
  }
}

double log_normalizer(const NaturalParam& p) {
  p.validate();
  const double e1 = p.eta[0], e2 = p.eta[1];
  switch (p.family) {
    case Family::Gaussian:
      return -e1 * e1 / (4.0 * e2) - 0.5 * std::log(-2.0 * e2);
    case Family::Gamma:
      return log_gamma(e1 + 1.0) - (e1 + 1.0) * std::log(-e2);
    case Family::Bernoulli:
      return e1 <= 0.0 ? std::log1p(std::exp(e1)) : e1 + std::log1p(std::exp(-e1));
    case Family::Beta:
      return log_gamma(e1) + log_gamma(e2) - log_gamma(e1 + e2);
  }
  return 0.0;
}

std::array<double, 2> grad_log_normalizer(const NaturalParam& p) {
  p.validate();
  const double e1 = p.eta[0], e2 = p.eta[1];
  switch (p.family) {
    case Family::Gaussian: {
      const double m = -0.5 * e1 / e2;
      return {m, m * m - 0.5 / e2};  // (E[w], E[w^2]) with 1/rho = -1/(2 eta2)
    }
    case Family::Gamma:
      return {digamma(e1 + 1.0) - std::log(-e2), -(e1 + 1.0) / e2};
    case Family::Bernoulli:
      return {sigmoid(e1), 0.0};
    case Family::Beta: {
      const double d = digamma(e1 + e2);
      return {digamma(e1) - d, digamma(e2) - d};
    }
  }
  return {0.0, 0.0};
}

double entropy(const NaturalParam& p) {
  if (p.family == Family::Bernoulli) {
    // A(eta) - eta*sigmoid(eta) loses all precision once sigmoid saturates;
    // the symmetric form stays exact and decays to 0 as |eta| grows.
    p.validate();
    const double x = std::abs(p.eta[0]);
    return std::log1p(std::exp(-x)) + x * sigmoid(-x);
  }
  const auto g = grad_log_normalizer(p);
  const double a = log_normalizer(p);
  double dot = p.eta[0] * g[0];
  if (p.dim() == 2) dot += p.eta[1] * g[1];
  double neg_e_log_h = 0.0;
  switch (p.family) {
    case Family::Gaussian:
      neg_e_log_h = kHalfLog2Pi;
      break;
    case Family::Gamma:
    case Family::Bernoulli:
      break;
    case Family::Beta:
      // h(pi) = 1/(pi(1-pi)), so -E[log h] = E[log pi] + E[log(1-pi)].
      neg_e_log_h = g[0] + g[1];
      break;
  }
  return neg_e_log_h + a - dot;
}

}  // namespace pcervm
