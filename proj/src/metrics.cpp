#include "pcervm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pcervm/cs.hpp"
#include "pcervm/design.hpp"
#include "pcervm/rng.hpp"

namespace pcervm {

Eigen::VectorXd predict(const SparsePce& pce, const Eigen::MatrixXd& Xi) {
  if (Xi.cols() != pce.spec.K) {
    throw std::invalid_argument("predict: input dimension mismatch");
  }
  const DesignMatrix dm = evaluate_design(pce.spec, Xi);
  return dm.values * pce.effective_coeffs();
}

double relative_mse(const SparsePce& pce, const Eigen::MatrixXd& Xi,
                    const Eigen::VectorXd& f) {
  if (f.size() < 1) throw std::invalid_argument("relative_mse: empty validation set");
  const double denom = f.squaredNorm();
  if (denom == 0.0) {
    throw std::invalid_argument("relative_mse: all-zero validation outputs");
  }
  return (f - predict(pce, Xi)).squaredNorm() / denom;
}

double l2_sq_distance(const SparsePce& a, const SparsePce& b) {
  if (a.spec.K != b.spec.K || a.spec.P != b.spec.P || a.spec.indices != b.spec.indices) {
    throw std::invalid_argument("l2_sq_distance: basis specs differ");
  }
  return (a.effective_coeffs() - b.effective_coeffs()).squaredNorm();
}

MomentSummary moments(const SparsePce& pce, std::int64_t n_mc, std::uint64_t seed) {
  if (n_mc < 1) throw std::invalid_argument("moments: n_mc must be >= 1");
  const Eigen::VectorXd coeff = pce.effective_coeffs();

  MomentSummary out;
  double var = 0.0;
  for (std::size_t j = 0; j < pce.spec.size(); ++j) {
    if (total_degree(pce.spec.indices[j]) == 0) {
      out.mean = coeff[Eigen::Index(j)];
    } else {
      var += coeff[Eigen::Index(j)] * coeff[Eigen::Index(j)];
    }
  }
  out.std_dev = std::sqrt(var);

  // Higher moments by seeded Monte Carlo through the predictor.
  Rng rng(seed);
  const Eigen::Index batch = 4096;
  Eigen::MatrixXd xi(batch, pce.spec.K);
  std::vector<double> samples;
  samples.reserve(std::size_t(n_mc));
  std::int64_t remaining = n_mc;
  while (remaining > 0) {
    const Eigen::Index nb = Eigen::Index(std::min<std::int64_t>(remaining, batch));
    for (Eigen::Index i = 0; i < nb; ++i) {
      for (int k = 0; k < pce.spec.K; ++k) xi(i, k) = rng.normal();
    }
    const Eigen::VectorXd y = predict(pce, xi.topRows(nb));
    for (Eigen::Index i = 0; i < nb; ++i) samples.push_back(y[i]);
    remaining -= nb;
  }
  double mu = 0.0;
  for (double v : samples) mu += v;
  mu /= double(samples.size());
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = v - mu;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= double(samples.size());
  m3 /= double(samples.size());
  m4 /= double(samples.size());
  const double s = std::sqrt(m2);
  out.skewness = s > 0.0 ? m3 / (s * s * s) : 0.0;
  out.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
  return out;
}

double sparsity_index(const SparsePce& pce, double threshold) {
  const Eigen::Index n = Eigen::Index(pce.spec.size());
  if (n == 0) return 0.0;
  Eigen::Index count = 0;
  if (pce.source == "cs") {
    count = (pce.coeff_mean.array().abs() > cs::kSignificantCoeff).count();
  } else {
    if (!(threshold > 0.0 && threshold < 1.0)) {
      throw std::invalid_argument("sparsity_index: threshold must lie in (0, 1)");
    }
    count = (pce.success_prob.array() > threshold).count();
  }
  return 100.0 * double(count) / double(n);
}

double r_squared(const Eigen::VectorXd& predictions, const Eigen::VectorXd& truths) {
  if (predictions.size() != truths.size() || truths.size() < 2) {
    throw std::invalid_argument("r_squared: need >= 2 matched points");
  }
  const double mean = truths.mean();
  const double ss_tot = (truths.array() - mean).square().sum();
  if (ss_tot == 0.0) throw std::invalid_argument("r_squared: zero-variance truths");
  const double ss_res = (truths - predictions).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

std::pair<double, double> bootstrap_ci(const Eigen::VectorXd& samples, int B, double alpha,
                                       std::uint64_t seed) {
  if (samples.size() < 1) throw std::invalid_argument("bootstrap_ci: empty sample");
  if (B < 100) throw std::invalid_argument("bootstrap_ci: B must be >= 100");
  const std::size_t n = std::size_t(samples.size());
  Rng rng(seed);
  std::vector<double> stats(static_cast<std::size_t>(B));
  for (int b = 0; b < B; ++b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += samples[Eigen::Index(rng.next_u64() % n)];
    }
    stats[std::size_t(b)] = acc / double(n);
  }
  std::sort(stats.begin(), stats.end());
  auto quantile = [&](double q) {
    const double pos = q * double(B - 1);
    const std::size_t lo = std::size_t(pos);
    const std::size_t hi = std::min(lo + 1, std::size_t(B - 1));
    const double frac = pos - double(lo);
    return stats[lo] * (1.0 - frac) + stats[hi] * frac;
  };
  return {quantile(alpha / 2.0), quantile(1.0 - alpha / 2.0)};
}

}  // namespace pcervm
