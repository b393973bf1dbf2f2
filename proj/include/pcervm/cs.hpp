#pragma once

// l1-minimization PCE fitting via Douglas-Rachford splitting: the
// iteration alternates the soft-threshold prox with a projection onto
// the data-fit constraint (equality by default, residual ball when
// epsilon > 0).

#include <Eigen/Dense>

#include "pcervm/dataset.hpp"
#include "pcervm/design.hpp"
#include "pcervm/pce.hpp"

namespace pcervm::cs {

struct CsConfig {
  double gamma = 1.0;     // prox step scale
  int max_iters = 20000;
  double tol = 1e-10;     // fixed-point residual tolerance
  double epsilon = 0.0;   // residual-ball radius; 0 = equality-constrained

  void validate() const;
};

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double t);

// Euclidean projection onto {w : Psi w = y} (epsilon = 0) or
// {w : ||Psi w - y|| <= epsilon}.  Factorizations are cached across calls.
class ResidualProjector {
 public:
  ResidualProjector(const Eigen::MatrixXd& Psi, const Eigen::VectorXd& y, double epsilon);
  Eigen::VectorXd project(const Eigen::VectorXd& w) const;

 private:
  const Eigen::MatrixXd& Psi_;
  Eigen::VectorXd y_;
  double epsilon_;
  Eigen::LLT<Eigen::MatrixXd> llt_;          // of Psi Psi^T, equality mode
  Eigen::BDCSVD<Eigen::MatrixXd> svd_;       // ball mode
};

struct CsResult {
  SparsePce pce;
  bool converged = false;
  int iters = 0;
  double fixed_point_residual = 0.0;
};

CsResult fit_cs(const DesignMatrix& design, const Eigen::VectorXd& y, const BasisSpec& spec,
                const CsConfig& config);
CsResult fit_cs(const Dataset& ds, const BasisSpec& spec, const CsConfig& config);

// Magnitude threshold used when reporting the support of a CS solution.
inline constexpr double kSignificantCoeff = 8e-4;

}  // namespace pcervm::cs
