#include "pcervm/ohagan.hpp"

#include <cmath>
#include <stdexcept>

#include "pcervm/rng.hpp"

namespace pcervm {

OhaganInstance make_instance(int K, std::uint64_t seed) {
  if (K < 1) throw std::invalid_argument("make_instance: K must be >= 1");
  OhaganInstance inst;
  inst.seed = seed;
  Rng rng(seed);
  const int n_large = std::min(3, K);
  const int n_small = K - n_large;
  auto draw_vec = [&]() {
    Eigen::VectorXd v(K);
    for (int i = 0; i < n_small; ++i) v[i] = rng.uniform(0.0, 1.0);
    for (int i = n_small; i < K; ++i) v[i] = rng.uniform(1.5, 2.0);
    return v;
  };
  inst.a1 = draw_vec();
  inst.a2 = draw_vec();
  inst.a3 = draw_vec();
  inst.M.resize(K, K);
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) inst.M(i, j) = rng.uniform(0.0, 2.0);
  }
  return inst;
}

double eval_ohagan(const OhaganInstance& inst, const Eigen::VectorXd& xi) {
  if (xi.size() != inst.a1.size()) throw std::invalid_argument("eval_ohagan: bad dimension");
  const Eigen::VectorXd s = xi.array().sin().matrix();
  const Eigen::VectorXd c = xi.array().cos().matrix();
  return inst.a1.dot(xi) + inst.a2.dot(s) + inst.a3.dot(c) + c.dot(inst.M * s);
}

Eigen::VectorXd eval_ohagan(const OhaganInstance& inst, const Eigen::MatrixXd& Xi) {
  Eigen::VectorXd out(Xi.rows());
  for (Eigen::Index i = 0; i < Xi.rows(); ++i) {
    out[i] = eval_ohagan(inst, Eigen::VectorXd(Xi.row(i).transpose()));
  }
  return out;
}

Dataset sample_dataset(const OhaganInstance& inst, Eigen::Index N, std::uint64_t seed,
                       double noise_std) {
  if (N < 1) throw std::invalid_argument("sample_dataset: N must be >= 1");
  const int K = inst.dim();
  Rng rng(seed);
  Dataset ds;
  ds.Xi.resize(N, K);
  ds.y.resize(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (int k = 0; k < K; ++k) ds.Xi(i, k) = rng.normal();
    ds.y[i] = eval_ohagan(inst, Eigen::VectorXd(ds.Xi.row(i).transpose()));
    if (noise_std > 0.0) ds.y[i] += noise_std * rng.normal();
  }
  ds.source = "synthetic";
  return ds;
}

}  // namespace pcervm
