#pragma once

// PCE prediction, moments and the comparison metrics.

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "pcervm/pce.hpp"

namespace pcervm {

// Posterior-mean prediction Psi(Xi) (m o pi_tilde).
Eigen::VectorXd predict(const SparsePce& pce, const Eigen::MatrixXd& Xi);

// sum (f - f_pc)^2 / sum f^2 over the validation set.
double relative_mse(const SparsePce& pce, const Eigen::MatrixXd& Xi,
                    const Eigen::VectorXd& f);

// Sum of squared differences of the effective coefficients.  Note this
// is a squared distance (no square root is taken).
double l2_sq_distance(const SparsePce& a, const SparsePce& b);

struct MomentSummary {
  double mean = 0.0;      // analytic: effective coefficient of the zero index
  double std_dev = 0.0;   // analytic: Parseval over the nonconstant terms
  double skewness = 0.0;  // seeded Monte Carlo, population estimator
  double kurtosis = 0.0;  // non-excess convention
};

MomentSummary moments(const SparsePce& pce, std::int64_t n_mc, std::uint64_t seed);

// Percentage of terms whose success probability exceeds the threshold
// (rvm source) or whose coefficient magnitude exceeds 8e-4 (cs source).
double sparsity_index(const SparsePce& pce, double threshold);

double r_squared(const Eigen::VectorXd& predictions, const Eigen::VectorXd& truths);

// Percentile bootstrap interval for the mean of `samples`.
std::pair<double, double> bootstrap_ci(const Eigen::VectorXd& samples, int B, double alpha,
                                       std::uint64_t seed);

}  // namespace pcervm
