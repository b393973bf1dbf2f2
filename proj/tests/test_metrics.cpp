#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pcervm/basis.hpp"
#include "pcervm/metrics.hpp"
#include "pcervm/rng.hpp"

using namespace pcervm;

namespace {

SparsePce make_pce(int K, int P, const Eigen::VectorXd& coeffs,
                   const std::string& source = "rvm") {
  SparsePce pce;
  pce.spec = build_index_set(K, P, Truncation::TD);
  REQUIRE(Eigen::Index(pce.spec.size()) == coeffs.size());
  pce.coeff_mean = coeffs;
  pce.coeff_var = Eigen::VectorXd::Zero(coeffs.size());
  pce.success_prob = Eigen::VectorXd::Ones(coeffs.size());
  pce.source = source;
  return pce;
}

}  // namespace

TEST_CASE("predict: trivial cases and linearity") {
  // K=1, P=1 basis is {1, xi}; coefficients (c0, c1) give c0 + c1 xi.
  Eigen::VectorXd c(2);
  c << 2.0, 3.0;
  const auto pce = make_pce(1, 1, c);
  Eigen::MatrixXd Xi(3, 1);
  Xi << -1.0, 0.0, 2.0;
  const Eigen::VectorXd p = predict(pce, Xi);
  CHECK(std::abs(p[0] - (-1.0)) < 1e-14);
  CHECK(std::abs(p[1] - 2.0) < 1e-14);
  CHECK(std::abs(p[2] - 8.0) < 1e-14);

  const auto zero = make_pce(1, 1, Eigen::VectorXd::Zero(2));
  CHECK(predict(zero, Xi).isZero(0.0));

  // Linearity in the coefficients.
  auto scaled = pce;
  scaled.coeff_mean *= 2.5;
  CHECK((predict(scaled, Xi) - 2.5 * p).cwiseAbs().maxCoeff() < 1e-12);

  // Success probabilities scale the effective coefficients.
  auto damped = pce;
  damped.success_prob << 1.0, 0.5;
  Eigen::VectorXd half(2);
  half << 2.0, 1.5;
  CHECK((predict(damped, Xi) - predict(make_pce(1, 1, half), Xi)).cwiseAbs().maxCoeff() <
        1e-14);

  Eigen::MatrixXd wrong(3, 2);
  wrong.setZero();
  CHECK_THROWS(predict(pce, wrong));
}

TEST_CASE("relative_mse: worked example") {
  // Model predicts (0, 2) at xi = (-1, 1); truth (1, 2): 1/5 = 0.2.
  Eigen::VectorXd c(2);
  c << 1.0, 1.0;
  const auto pce = make_pce(1, 1, c);
  Eigen::MatrixXd Xi(2, 1);
  Xi << -1.0, 1.0;
  Eigen::VectorXd f(2);
  f << 1.0, 2.0;
  CHECK(std::abs(relative_mse(pce, Xi, f) - 0.2) < 1e-14);

  CHECK_THROWS(relative_mse(pce, Xi, Eigen::VectorXd::Zero(2)));
}

TEST_CASE("l2_sq_distance: identity, symmetry, worked value") {
  Eigen::VectorXd ca(3), cb(3);
  ca << 1.0, 2.0, -1.0;
  cb << 1.0, 0.0, 1.0;
  const auto a = make_pce(2, 1, ca);
  const auto b = make_pce(2, 1, cb);
  CHECK(l2_sq_distance(a, a) == 0.0);
  CHECK(l2_sq_distance(a, b) == l2_sq_distance(b, a));
  CHECK(std::abs(l2_sq_distance(a, b) - 8.0) < 1e-14);  // 0 + 4 + 4

  const auto other = make_pce(2, 2, Eigen::VectorXd::Zero(6));
  CHECK_THROWS(l2_sq_distance(a, other));
}

TEST_CASE("moments: analytic mean and std from the coefficients") {
  Eigen::VectorXd c(2);
  c << 2.0, 3.0;
  const auto pce = make_pce(1, 1, c);
  const auto mom = moments(pce, 1000, 1);
  CHECK(mom.mean == 2.0);
  CHECK(std::abs(mom.std_dev - 3.0) < 1e-14);
}

TEST_CASE("moments: degree-1-only expansion is Gaussian") {
  // f = 1 + 2 xi_1 - xi_2 is exactly Gaussian: skewness 0, kurtosis 3.
  Eigen::VectorXd c(3);
  c << 1.0, 2.0, -1.0;
  const auto pce = make_pce(2, 1, c);
  const auto mom = moments(pce, 100000, 7);
  CHECK(std::abs(mom.skewness) < 0.05);
  CHECK(std::abs(mom.kurtosis - 3.0) < 0.1);
}

TEST_CASE("moments: analytic values agree with direct Monte Carlo") {
  Eigen::VectorXd c(6);
  c << 0.5, 1.0, -2.0, 0.7, 0.0, 1.3;  // K=2, P=2
  const auto pce = make_pce(2, 2, c);
  const auto mom = moments(pce, 1000, 3);

  const int n = 100000;
  Rng rng(99);
  Eigen::MatrixXd Xi(n, 2);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 2; ++k) Xi(i, k) = rng.normal();
  const Eigen::VectorXd s = predict(pce, Xi);
  const double mc_mean = s.mean();
  const double mc_var = (s.array() - mc_mean).square().sum() / double(n);
  const double mc_std = std::sqrt(mc_var);
  const double se_mean = mc_std / std::sqrt(double(n));
  CHECK(std::abs(mom.mean - mc_mean) < 4.0 * se_mean);
  // SE of the sample std, using the sample fourth moment.
  const double m4 = (s.array() - mc_mean).pow(4).sum() / double(n);
  const double se_std = std::sqrt(std::max(m4 - mc_var * mc_var, 0.0) / double(n)) /
                        (2.0 * mc_std);
  CHECK(std::abs(mom.std_dev - mc_std) < 4.0 * se_std);
}

TEST_CASE("sparsity_index: worked example and CS magnitude rule") {
  Eigen::VectorXd c(3);
  c << 1.0, 1.0, 1.0;
  auto pce = make_pce(2, 1, c);
  pce.success_prob << 0.99, 0.001, 0.5;
  CHECK(std::abs(sparsity_index(pce, 0.95) - 100.0 / 3.0) < 1e-10);
  CHECK_THROWS(sparsity_index(pce, 1.5));

  Eigen::VectorXd cc(3);
  cc << 0.1, 5e-4, -0.02;  // one entry below the 8e-4 magnitude threshold
  auto cs_pce = make_pce(2, 1, cc, "cs");
  CHECK(std::abs(sparsity_index(cs_pce, 0.95) - 200.0 / 3.0) < 1e-10);
}

TEST_CASE("r_squared: perfect fit and mean predictor") {
  Eigen::VectorXd truth(4);
  truth << 1.0, 2.0, 3.0, 4.0;
  CHECK(r_squared(truth, truth) == 1.0);
  const Eigen::VectorXd mean_pred = Eigen::VectorXd::Constant(4, truth.mean());
  CHECK(std::abs(r_squared(mean_pred, truth)) < 1e-14);
  CHECK_THROWS(r_squared(truth, Eigen::VectorXd::Ones(3)));
}

TEST_CASE("bootstrap_ci: deterministic and brackets the sample mean") {
  Rng rng(55);
  Eigen::VectorXd s(500);
  for (int i = 0; i < 500; ++i) s[i] = 2.0 + 0.5 * rng.normal();
  const auto ci1 = bootstrap_ci(s, 1000, 0.05, 17);
  const auto ci2 = bootstrap_ci(s, 1000, 0.05, 17);
  CHECK(ci1 == ci2);
  CHECK(ci1.first < ci1.second);
  const double mean = s.mean();
  CHECK(ci1.first <= mean);
  CHECK(ci1.second >= mean);
  const auto ci3 = bootstrap_ci(s, 1000, 0.05, 18);
  CHECK(ci1 != ci3);  // seed changes the resampling
  CHECK_THROWS(bootstrap_ci(s, 50, 0.05, 1));
}
