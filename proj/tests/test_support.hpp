#pragma once

// Shared oracles for the unit tests: Gauss-Hermite quadrature built
// independently of the library (Golub-Welsch on the Jacobi matrix) and a
// couple of small helpers.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace testsup {

struct Quadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;  // normalized against N(0,1)
};

// Gauss-Hermite rule for the standard normal weight, n nodes (exact for
// polynomials up to degree 2n-1).
inline Quadrature gauss_hermite(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = std::sqrt(double(k));
    J(k - 1, k) = off;
    J(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Quadrature q;
  q.nodes = es.eigenvalues();
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    q.weights[i] = v0 * v0;  // first-row component squared, total mass 1
  }
  return q;
}

// Composite Simpson on [lo, hi].
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      int n_panels) {
  const int n = 2 * n_panels;
  const double h = (hi - lo) / n;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace testsup
