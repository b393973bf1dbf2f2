#include "pcervm/design.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pcervm {

DesignMatrix evaluate_design(const BasisSpec& spec, const Eigen::MatrixXd& Xi) {
  const auto N = Xi.rows();
  if (Xi.cols() != spec.K) {
    throw std::invalid_argument("evaluate_design: input has " +
                                std::to_string(Xi.cols()) + " columns, basis expects " +
                                std::to_string(spec.K));
  }
  int max_deg = 0;
  for (const auto& alpha : spec.indices) {
    for (int a : alpha) max_deg = std::max(max_deg, a);
  }

  DesignMatrix dm;
  dm.values.resize(N, Eigen::Index(spec.size()));
  // Univariate values psi_d(xi_k) for one row, d = 0..max_deg.
  Eigen::MatrixXd uni(max_deg + 1, spec.K);
  for (Eigen::Index n = 0; n < N; ++n) {
    for (int k = 0; k < spec.K; ++k) {
      const double x = Xi(n, k);
      if (!std::isfinite(x)) {
        throw std::invalid_argument("evaluate_design: non-finite input in row " +
                                    std::to_string(n));
      }
      double prev = 0.0, cur = 1.0;
      uni(0, k) = 1.0;
      for (int d = 0; d < max_deg; ++d) {
        const double next = (x * cur - std::sqrt(double(d)) * prev) / std::sqrt(double(d + 1));
        prev = cur;
        cur = next;
        uni(d + 1, k) = cur;
      }
    }
    for (std::size_t j = 0; j < spec.size(); ++j) {
      double v = 1.0;
      const MultiIndex& alpha = spec.indices[j];
      for (int k = 0; k < spec.K; ++k) v *= uni(alpha[k], k);
      dm.values(n, Eigen::Index(j)) = v;
    }
  }
  dm.gram.noalias() = dm.values.transpose() * dm.values;
  return dm;
}

}  // namespace pcervm
