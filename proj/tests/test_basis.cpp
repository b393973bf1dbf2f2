#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pcervm/basis.hpp"
#include "pcervm/design.hpp"
#include "pcervm/rng.hpp"
#include "test_support.hpp"

using namespace pcervm;

namespace {
long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::set<MultiIndex> as_set(const BasisSpec& spec) {
  return {spec.indices.begin(), spec.indices.end()};
}
}  // namespace

TEST_CASE("hermite_orthonormal: worked examples") {
  CHECK(hermite_orthonormal(0, 7.3) == 1.0);
  // Degree 2 at x=2: (x^2 - 1)/sqrt(2) = 3/sqrt(2).
  CHECK(std::abs(hermite_orthonormal(2, 2.0) - 3.0 / std::sqrt(2.0)) < 1e-14);
  // Degree 3 at x=1: (x^3 - 3x)/sqrt(6) = -2/sqrt(6).
  CHECK(std::abs(hermite_orthonormal(3, 1.0) - (-2.0 / std::sqrt(6.0))) < 1e-14);
  CHECK(std::abs(hermite_orthonormal(1, -1.25) - (-1.25)) < 1e-15);
}

TEST_CASE("hermite orthonormality under Gauss-Hermite quadrature") {
  // 20 nodes integrate polynomials up to degree 39 exactly; m+n <= 16 here.
  const auto q = testsup::gauss_hermite(20);
  for (int m = 0; m <= 8; ++m) {
    for (int n = 0; n <= 8; ++n) {
      double acc = 0.0;
      for (int i = 0; i < q.nodes.size(); ++i) {
        acc += q.weights[i] * hermite_orthonormal(m, q.nodes[i]) *
               hermite_orthonormal(n, q.nodes[i]);
      }
      CHECK(std::abs(acc - (m == n ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("TD index-set size is C(K+P, P)") {
  for (int K = 1; K <= 12; ++K) {
    for (int P = 0; P <= 12; ++P) {
      const auto spec = build_index_set(K, P, Truncation::TD);
      CHECK(static_cast<long long>(spec.size()) == binom(K + P, P));
    }
  }
}

TEST_CASE("worked index-set examples") {
  CHECK(build_index_set(10, 4, Truncation::TD).size() == 1001);

  const auto hc = build_index_set(2, 2, Truncation::HC);
  REQUIRE(hc.size() == 5);
  const std::vector<MultiIndex> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}};
  CHECK(hc.indices == want);

  const auto lq = build_index_set(2, 2, Truncation::LQ, 0.5);
  CHECK(lq.size() == 5);
  CHECK(as_set(lq).count({1, 1}) == 0);
}

TEST_CASE("truncation-rule inclusions") {
  for (int K : {2, 3}) {
    for (int P : {2, 3, 4}) {
      const auto td = as_set(build_index_set(K, P, Truncation::TD));
      const auto tp = as_set(build_index_set(K, P, Truncation::TP));
      const auto hc = as_set(build_index_set(K, P, Truncation::HC));
      const auto lq = as_set(build_index_set(K, P, Truncation::LQ, 0.7));
      for (const auto& a : td) CHECK(tp.count(a) == 1);
      for (const auto& a : hc) CHECK(td.count(a) == 1);
      for (const auto& a : hc) CHECK(lq.count(a) == 1);
      for (const auto& a : lq) CHECK(td.count(a) == 1);
      // q = 1 recovers total degree exactly.
      CHECK(as_set(build_index_set(K, P, Truncation::LQ, 1.0)) == td);
    }
  }
}

TEST_CASE("graded-lexicographic ordering") {
  const auto spec = build_index_set(3, 3, Truncation::TD);
  CHECK(spec.indices.front() == MultiIndex{0, 0, 0});
  for (std::size_t i = 1; i < spec.indices.size(); ++i) {
    const int da = total_degree(spec.indices[i - 1]);
    const int db = total_degree(spec.indices[i]);
    CHECK(da <= db);
    if (da == db) CHECK(spec.indices[i - 1] > spec.indices[i]);
  }
}

TEST_CASE("truncation name round trip and bad name") {
  for (auto t : {Truncation::TD, Truncation::LQ, Truncation::TP, Truncation::HC}) {
    CHECK(truncation_from_string(truncation_name(t)) == t);
  }
  CHECK_THROWS_AS(truncation_from_string("XX"), std::invalid_argument);
}

TEST_CASE("design matrix: worked K=1 example") {
  const auto spec = build_index_set(1, 2, Truncation::TD);
  REQUIRE(spec.size() == 3);
  Eigen::MatrixXd Xi(1, 1);
  Xi(0, 0) = 0.0;
  const auto d = evaluate_design(spec, Xi);
  CHECK(std::abs(d.values(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(d.values(0, 1) - 0.0) < 1e-15);
  CHECK(std::abs(d.values(0, 2) - (-1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK(d.gram.isApprox(d.values.transpose() * d.values, 1e-14));
}

TEST_CASE("Monte Carlo Gram matrix is near identity") {
  const auto spec = build_index_set(3, 3, Truncation::TD);
  const int N = 200000;
  Rng rng(7);
  Eigen::MatrixXd Xi(N, 3);
  for (int n = 0; n < N; ++n)
    for (int k = 0; k < 3; ++k) Xi(n, k) = rng.normal();
  const auto d = evaluate_design(spec, Xi);
  const Eigen::MatrixXd G = d.gram / double(N);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(G.rows(), G.cols());
  CHECK((G - I).cwiseAbs().maxCoeff() < 0.1);
}

TEST_CASE("design evaluation is deterministic and validates input") {
  const auto spec = build_index_set(2, 2, Truncation::TD);
  Eigen::MatrixXd Xi(3, 2);
  Xi << 0.1, -0.2, 1.5, 0.3, -0.7, 2.0;
  const auto a = evaluate_design(spec, Xi);
  const auto b = evaluate_design(spec, Xi);
  CHECK(a.values == b.values);

  Eigen::MatrixXd bad = Xi;
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(evaluate_design(spec, bad), std::invalid_argument);

  Eigen::MatrixXd wrong(3, 3);
  wrong.setZero();
  CHECK_THROWS_AS(evaluate_design(spec, wrong), std::invalid_argument);
}
