#pragma once

// Seeded synthetic benchmark function
//   f(xi) = a1.xi + a2.sin(xi) + a3.cos(xi) + cos(xi)^T M sin(xi)
// with coefficients drawn so the last few input dimensions dominate.

#include <cstdint>

#include <Eigen/Dense>

#include "pcervm/dataset.hpp"

namespace pcervm {

struct OhaganInstance {
  Eigen::VectorXd a1, a2, a3;
  Eigen::MatrixXd M;
  std::uint64_t seed = 0;

  int dim() const { return int(a1.size()); }
};

// Draws a1, a2, a3 then M (row-major) from one splitmix64 stream.
// Entries of each a_i: U(0,1) except the last min(3, K), which are
// U(1.5, 2); entries of M are U(0, 2).
OhaganInstance make_instance(int K, std::uint64_t seed);

double eval_ohagan(const OhaganInstance& inst, const Eigen::VectorXd& xi);
Eigen::VectorXd eval_ohagan(const OhaganInstance& inst, const Eigen::MatrixXd& Xi);

// N standard-normal input points and their responses, continuing the
// given stream.  noise_std > 0 adds Gaussian observation noise.
Dataset sample_dataset(const OhaganInstance& inst, Eigen::Index N, std::uint64_t seed,
                       double noise_std = 0.0);

}  // namespace pcervm
