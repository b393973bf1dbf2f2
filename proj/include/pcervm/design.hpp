#pragma once

#include <Eigen/Dense>

#include "pcervm/basis.hpp"

namespace pcervm {

// Basis evaluations at the sample points.  The Gram matrix Psi^T Psi is
// computed once here and shared read-only with the fitting engines.
struct DesignMatrix {
  Eigen::MatrixXd values;  // N x N_K, entry (n, j) = Psi_j(xi^(n))
  Eigen::MatrixXd gram;    // N_K x N_K
};

// Throws std::invalid_argument on a column-count mismatch or a non-finite
// input value (the offending row is named in the message).
DesignMatrix evaluate_design(const BasisSpec& spec, const Eigen::MatrixXd& Xi);

}  // namespace pcervm
