#pragma once

// Variational relevance-vector-machine engine: model state in natural
// parameters, the coordinate-ascent updates, the evidence lower bound
// and the full fitting loop with active-set pruning.

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pcervm/dataset.hpp"
#include "pcervm/design.hpp"
#include "pcervm/pce.hpp"

namespace pcervm::rvm {

struct PriorConfig {
  double a = 1e-6, b = 1e-6;  // Gamma prior on the coefficient precisions
  double c = 0.2, d = 1.0;    // Beta prior on the inclusion probabilities
  double u = 1e-6, w = 1e-6;  // Gamma prior on the noise precision

  void validate() const;  // all strictly positive
};

struct FitConfig {
  double delta = 1e-4;     // convergence tolerance on the full parameter vector
  double delta_pi = 1e-4;  // convergence tolerance on pi_tilde
  double eps_pi = 0.01;    // pruning threshold on the success probabilities
  int max_sweeps = 10000;

  void validate() const;
};

// Natural parameters for the five variable blocks plus the derived
// moment parameters the updates consume.
struct RvmState {
  // Gamma q(tau): eta = (upsilon - 1, -omega).
  std::array<double, 2> eta_tau{};
  // Per-term Gamma q(sigma_i), Beta q(pi_i), Gaussian q(w_i), Bernoulli q(iota_i).
  Eigen::ArrayXd eta_s1, eta_s2;
  Eigen::ArrayXd eta_p1, eta_p2;  // (r_i, s_i)
  Eigen::ArrayXd eta_w1, eta_w2;
  Eigen::ArrayXd eta_iota;
  // Derived: m_i = -eta_w1/(2 eta_w2), rho_i = -2 eta_w2, pi_tilde = sigmoid(eta_iota).
  Eigen::ArrayXd m, rho, pi_tilde;

  std::vector<int> active;
  std::vector<double> elbo_trace;

  Eigen::Index n_terms() const { return eta_iota.size(); }
  double e_tau() const { return -(eta_tau[0] + 1.0) / eta_tau[1]; }
  double e_sigma(int i) const { return -(eta_s1[i] + 1.0) / eta_s2[i]; }

  // Recompute the derived moments of term i from its natural parameters.
  void sync_derived(int i);
};

// Cached products shared by the per-term updates.  `t` tracks
// Gram * (pi_tilde o m) and is maintained by rank-one corrections.
struct Workspace {
  Eigen::VectorXd psy;  // Psi^T y
  double yty = 0.0;
  Eigen::VectorXd t;

  Workspace(const DesignMatrix& design, const Eigen::VectorXd& y, const RvmState& state);
  void refresh(const DesignMatrix& design, const RvmState& state);
};

RvmState init_state(const PriorConfig& prior, Eigen::Index n_terms);

// Returns (E[L1], E[L2]) = (N/2, expected negative half squared residual).
std::pair<double, double> expected_L(const RvmState& state, const DesignMatrix& design,
                                     const Eigen::VectorXd& y);

void update_tau(RvmState& state, const PriorConfig& prior, Eigen::Index N, double el2);
void update_sigma(RvmState& state, const PriorConfig& prior, int i);
void update_pi(RvmState& state, const PriorConfig& prior, int i);
// Updates eta_iota[i] / pi_tilde[i]; e_tau is E[tau] held from the sweep top.
void update_iota(RvmState& state, int i, const DesignMatrix& design, Workspace& ws,
                 double e_tau);
// Updates eta_w[i] and the derived (m_i, rho_i).
void update_w(RvmState& state, int i, const DesignMatrix& design, Workspace& ws,
              double e_tau);

double elbo(const RvmState& state, const DesignMatrix& design, const Eigen::VectorXd& y,
            const PriorConfig& prior);

struct FitResult {
  SparsePce pce;
  RvmState state;
  bool converged = false;
  int sweeps = 0;
};

FitResult fit(const DesignMatrix& design, const Eigen::VectorXd& y, const BasisSpec& spec,
              const PriorConfig& prior, const FitConfig& config);
FitResult fit(const Dataset& ds, const BasisSpec& spec, const PriorConfig& prior,
              const FitConfig& config);

}  // namespace pcervm::rvm
