#include "pcervm/cs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcervm::cs {

void CsConfig::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("CsConfig: gamma must be positive");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("CsConfig: epsilon must be >= 0");
  if (max_iters < 1) throw std::invalid_argument("CsConfig: max_iters must be >= 1");
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double t) {
  if (t < 0.0) throw std::invalid_argument("soft_threshold: threshold must be >= 0");
  return x.array().sign() * (x.array().abs() - t).max(0.0);
}

ResidualProjector::ResidualProjector(const Eigen::MatrixXd& Psi, const Eigen::VectorXd& y,
                                     double epsilon)
    : Psi_(Psi), y_(y), epsilon_(epsilon) {
  if (epsilon_ == 0.0) {
    llt_.compute(Psi_ * Psi_.transpose());
    if (llt_.info() != Eigen::Success) {
      throw std::runtime_error("ResidualProjector: Psi Psi^T factorization failed "
                               "(rank-deficient design in equality mode)");
    }
  } else {
    svd_.compute(Psi_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  }
}

Eigen::VectorXd ResidualProjector::project(const Eigen::VectorXd& w) const {
  if (epsilon_ == 0.0) {
    const Eigen::VectorXd r = Psi_ * w - y_;
    return w - Psi_.transpose() * llt_.solve(r);
  }
  if ((Psi_ * w - y_).norm() <= epsilon_) return w;
  // Projection onto the ellipsoidal preimage via the SVD: only the
  // row-space coordinates of w move, scaled by a Lagrange multiplier mu
  // found by bisection on the residual norm.
  const Eigen::VectorXd sig = svd_.singularValues();
  const Eigen::VectorXd c = svd_.matrixV().transpose() * w;
  const Eigen::VectorXd yhat = svd_.matrixU().transpose() * y_;
  const double y_perp2 = y_.squaredNorm() - yhat.squaredNorm();
  const double target = epsilon_ * epsilon_;
  auto resid2 = [&](double mu) {
    double s = y_perp2;
    for (Eigen::Index i = 0; i < sig.size(); ++i) {
      const double num = sig[i] * c[i] - yhat[i];
      const double den = 1.0 + mu * sig[i] * sig[i];
      s += (num / den) * (num / den);
    }
    return s;
  };
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (resid2(hi) > target && guard++ < 200) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (resid2(mid) > target ? lo : hi) = mid;
  }
  const double mu = hi;
  Eigen::VectorXd coord(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    coord[i] = (c[i] + mu * sig[i] * yhat[i]) / (1.0 + mu * sig[i] * sig[i]);
  }
  return w + svd_.matrixV() * (coord - c);
}

CsResult fit_cs(const DesignMatrix& design, const Eigen::VectorXd& y, const BasisSpec& spec,
                const CsConfig& config) {
  config.validate();
  const ResidualProjector proj(design.values, y, config.epsilon);
  const Eigen::Index n = design.values.cols();

  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd x = proj.project(z);
  CsResult result;
  result.fixed_point_residual = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < config.max_iters; ++it) {
    const Eigen::VectorXd step = soft_threshold(2.0 * x - z, config.gamma) - x;
    z += step;
    x = proj.project(z);
    result.fixed_point_residual = step.norm() / std::max(1.0, x.norm());
    if (result.fixed_point_residual < config.tol) {
      result.converged = true;
      ++it;
      break;
    }
  }
  result.iters = it;
  result.pce.spec = spec;
  result.pce.coeff_mean = x;
  result.pce.coeff_var = Eigen::VectorXd::Zero(n);
  // pi_tilde is 1 on the numerically nonzero support so the effective
  // coefficients m o pi_tilde reproduce the solver output.
  const double floor = 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff());
  result.pce.success_prob = (x.array().abs() > floor).cast<double>().matrix();
  result.pce.source = "cs";
  return result;
}

CsResult fit_cs(const Dataset& ds, const BasisSpec& spec, const CsConfig& config) {
  ds.validate();
  const DesignMatrix design = evaluate_design(spec, ds.Xi);
  return fit_cs(design, ds.y, spec, config);
}

}  // namespace pcervm::cs
