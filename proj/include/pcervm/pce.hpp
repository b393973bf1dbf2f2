#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "pcervm/basis.hpp"

namespace pcervm {

// A fitted sparse expansion.  The effective coefficient of term i is
// coeff_mean[i] * success_prob[i]; for a compressive-sensing fit
// success_prob is the 0/1 indicator of the reported support.
struct SparsePce {
  BasisSpec spec;
  Eigen::VectorXd coeff_mean;    // m
  Eigen::VectorXd coeff_var;     // 1/rho (zero for CS fits)
  Eigen::VectorXd success_prob;  // pi_tilde
  std::string source;            // "rvm" or "cs"
  std::map<std::string, std::string> metadata;

  Eigen::VectorXd effective_coeffs() const {
    return coeff_mean.cwiseProduct(success_prob);
  }
};

}  // namespace pcervm
