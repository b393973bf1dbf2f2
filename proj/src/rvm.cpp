#include "pcervm/rvm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pcervm/expfam.hpp"
#include "pcervm/special.hpp"

namespace pcervm::rvm {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

void PriorConfig::validate() const {
  if (!(a > 0 && b > 0 && c > 0 && d > 0 && u > 0 && w > 0)) {
    throw std::invalid_argument("PriorConfig: all hyperparameters must be positive");
  }
}

void FitConfig::validate() const {
  if (!(delta > 0 && delta_pi > 0)) {
    throw std::invalid_argument("FitConfig: tolerances must be positive");
  }
  if (!(eps_pi > 0 && eps_pi < 1)) {
    throw std::invalid_argument("FitConfig: eps_pi must lie in (0, 1)");
  }
  if (max_sweeps < 1) throw std::invalid_argument("FitConfig: max_sweeps must be >= 1");
}

void RvmState::sync_derived(int i) {
  rho[i] = -2.0 * eta_w2[i];
  m[i] = -eta_w1[i] / (2.0 * eta_w2[i]);
  pi_tilde[i] = sigmoid(eta_iota[i]);
}

RvmState init_state(const PriorConfig& prior, Eigen::Index n_terms) {
  prior.validate();
  RvmState s;
  s.eta_tau = {prior.u - 1.0, -prior.w};
  s.eta_s1 = Eigen::ArrayXd::Constant(n_terms, prior.a - 1.0);
  s.eta_s2 = Eigen::ArrayXd::Constant(n_terms, -prior.b);
  s.eta_p1 = Eigen::ArrayXd::Constant(n_terms, prior.c);
  s.eta_p2 = Eigen::ArrayXd::Constant(n_terms, prior.d);
  // eta_w = E_{q_sigma}[zeta_w] = (0, -E[sigma]/2) with prior mean a/b.
  s.eta_w1 = Eigen::ArrayXd::Zero(n_terms);
  s.eta_w2 = Eigen::ArrayXd::Constant(n_terms, -0.5 * prior.a / prior.b);
  // eta_iota = E_{q_pi}[zeta_iota] = psi0(c) - psi0(d).
  s.eta_iota = Eigen::ArrayXd::Constant(n_terms, digamma(prior.c) - digamma(prior.d));
  s.m = Eigen::ArrayXd::Zero(n_terms);
  s.rho = Eigen::ArrayXd::Constant(n_terms, prior.a / prior.b);
  s.pi_tilde = Eigen::ArrayXd::Constant(n_terms, sigmoid(s.eta_iota[0]));
  s.active.resize(std::size_t(n_terms));
  for (Eigen::Index i = 0; i < n_terms; ++i) s.active[std::size_t(i)] = int(i);
  return s;
}

Workspace::Workspace(const DesignMatrix& design, const Eigen::VectorXd& y,
                     const RvmState& state) {
  psy.noalias() = design.values.transpose() * y;
  yty = y.squaredNorm();
  refresh(design, state);
}

void Workspace::refresh(const DesignMatrix& design, const RvmState& state) {
  t.noalias() = design.gram * (state.pi_tilde * state.m).matrix();
}

std::pair<double, double> expected_L(const RvmState& state, const DesignMatrix& design,
                                     const Eigen::VectorXd& y) {
  const Eigen::Index N = y.size();
  if (design.values.rows() != N || design.values.cols() != state.n_terms()) {
    throw std::invalid_argument("expected_L: dimension mismatch");
  }
  const Eigen::VectorXd b = (state.pi_tilde * state.m).matrix();
  const double resid = (y - design.values * b).squaredNorm();
  // Hadamard identity: (m - m o pi) o (m o pi) = m^2 o pi o (1 - pi).
  const Eigen::ArrayXd gdiag = design.gram.diagonal().array();
  const double trace =
      (gdiag * (state.pi_tilde / state.rho +
                state.m.square() * state.pi_tilde * (1.0 - state.pi_tilde)))
          .sum();
  return {0.5 * double(N), -0.5 * resid - 0.5 * trace};
}

void update_tau(RvmState& state, const PriorConfig& prior, Eigen::Index N, double el2) {
  state.eta_tau = {prior.u - 1.0 + 0.5 * double(N), -prior.w + el2};
}

void update_sigma(RvmState& state, const PriorConfig& prior, int i) {
  // kappa = a + 1/2, lambda = b + E[w_i^2]/2.
  const double e_w2 = state.m[i] * state.m[i] + 1.0 / state.rho[i];
  state.eta_s1[i] = prior.a - 0.5;
  state.eta_s2[i] = -(prior.b + 0.5 * e_w2);
}

void update_pi(RvmState& state, const PriorConfig& prior, int i) {
  // Stationary point of the ELBO in the Beta block: r = c + pi_tilde,
  // s = d + 1 - pi_tilde.
  state.eta_p1[i] = prior.c + state.pi_tilde[i];
  state.eta_p2[i] = prior.d + 1.0 - state.pi_tilde[i];
}

void update_iota(RvmState& state, int i, const DesignMatrix& design, Workspace& ws,
                 double e_tau) {
  const double gii = design.gram(i, i);
  const double mi = state.m[i];
  const double u_i = mi * ws.psy[i] - mi * ws.t[i] -
                     0.5 * gii * (1.0 / state.rho[i] +
                                  (1.0 - 2.0 * state.pi_tilde[i]) * mi * mi);
  state.eta_iota[i] = (digamma(state.eta_p1[i]) - digamma(state.eta_p2[i])) + e_tau * u_i;
  const double old_b = state.pi_tilde[i] * mi;
  state.pi_tilde[i] = sigmoid(state.eta_iota[i]);
  const double new_b = state.pi_tilde[i] * mi;
  if (new_b != old_b) ws.t += design.gram.col(i) * (new_b - old_b);
}

void update_w(RvmState& state, int i, const DesignMatrix& design, Workspace& ws,
              double e_tau) {
  const double gii = design.gram(i, i);
  const double pi = state.pi_tilde[i];
  const double e_sigma = state.e_sigma(i);
  // v uses m with the i-th entry zeroed, so remove term i from t.
  const double t_minus_i = ws.t[i] - gii * pi * state.m[i];
  const double v1 = pi * (ws.psy[i] - t_minus_i);
  const double v2 = -0.5 * pi * gii;
  state.eta_w1[i] = e_tau * v1;
  state.eta_w2[i] = -0.5 * e_sigma + e_tau * v2;
  const double old_b = pi * state.m[i];
  state.rho[i] = -2.0 * state.eta_w2[i];
  state.m[i] = state.eta_w1[i] / state.rho[i];
  const double new_b = pi * state.m[i];
  if (new_b != old_b) ws.t += design.gram.col(i) * (new_b - old_b);
}

double elbo(const RvmState& state, const DesignMatrix& design, const Eigen::VectorXd& y,
            const PriorConfig& prior) {
  const Eigen::Index N = y.size();
  const auto [el1, el2] = expected_L(state, design, y);

  const double ups = state.eta_tau[0] + 1.0;
  const double om = -state.eta_tau[1];
  const double e_log_tau = digamma(ups) - std::log(om);
  const double e_tau = ups / om;

  // Expected log-likelihood.
  double f = -0.5 * double(N) * kLog2Pi + el1 * e_log_tau + e_tau * el2;

  // tau: expected log-prior plus entropy.
  f += (prior.u - 1.0) * e_log_tau - prior.w * e_tau -
       (log_gamma(prior.u) - prior.u * std::log(prior.w));
  f += entropy(NaturalParam::gamma(ups, om));

  for (Eigen::Index i = 0; i < state.n_terms(); ++i) {
    const double kappa = state.eta_s1[i] + 1.0;
    const double lambda = -state.eta_s2[i];
    const double e_sig = kappa / lambda;
    const double e_log_sig = digamma(kappa) - std::log(lambda);
    const double e_w2 = state.m[i] * state.m[i] + 1.0 / state.rho[i];
    const double r = state.eta_p1[i];
    const double s = state.eta_p2[i];
    const double psi_rs = digamma(r + s);
    const double e_log_pi = digamma(r) - psi_rs;
    const double e_log_1mpi = digamma(s) - psi_rs;
    const double pi = state.pi_tilde[i];

    // E[log p(w_i | sigma_i)]; E[A_w(zeta_w)] = -E[log sigma_i]/2.
    f += -0.5 * kLog2Pi - 0.5 * e_sig * e_w2 + 0.5 * e_log_sig;
    // E[log p(sigma_i)].
    f += (prior.a - 1.0) * e_log_sig - prior.b * e_sig -
         (log_gamma(prior.a) - prior.a * std::log(prior.b));
    // E[log p(iota_i | pi_i)] = E[zeta_iota] pi_tilde - E[A_iota(zeta_iota)].
    f += (digamma(r) - digamma(s)) * pi - (psi_rs - digamma(s));
    // E[log p(pi_i)]; h(pi) = 1/(pi(1-pi)).
    f += -(e_log_pi + e_log_1mpi) + (prior.c * e_log_pi + prior.d * e_log_1mpi) -
         (log_gamma(prior.c) + log_gamma(prior.d) - log_gamma(prior.c + prior.d));

    f += entropy(NaturalParam::gaussian(state.m[i], state.rho[i]));
    f += entropy(NaturalParam::gamma(kappa, lambda));
    f += entropy(NaturalParam::bernoulli_logit(state.eta_iota[i]));
    f += entropy(NaturalParam::beta(r, s));
  }
  return f;
}

namespace {

// Max over components of |delta| / (1 + |old|).
struct RelChange {
  double value = 0.0;
  void add(double old_v, double new_v) {
    const double r = std::abs(new_v - old_v) / (1.0 + std::abs(old_v));
    if (r > value) value = r;
  }
};

void check_finite(const RvmState& s, int sweep) {
  const bool ok = s.eta_s1.allFinite() && s.eta_s2.allFinite() && s.eta_p1.allFinite() &&
                  s.eta_p2.allFinite() && s.eta_w1.allFinite() && s.eta_w2.allFinite() &&
                  s.eta_iota.allFinite() && std::isfinite(s.eta_tau[0]) &&
                  std::isfinite(s.eta_tau[1]);
  if (!ok) {
    throw std::runtime_error("rvm::fit: non-finite parameter at sweep " +
                             std::to_string(sweep));
  }
}

}  // namespace

FitResult fit(const DesignMatrix& design, const Eigen::VectorXd& y, const BasisSpec& spec,
              const PriorConfig& prior, const FitConfig& config) {
  prior.validate();
  config.validate();
  if (y.size() < 1) throw std::invalid_argument("rvm::fit: empty dataset");

  const Eigen::Index n_terms = Eigen::Index(spec.size());
  RvmState state = init_state(prior, n_terms);
  Workspace ws(design, y, state);

  bool converged = false;
  int sweep = 0;
  for (; sweep < config.max_sweeps; ++sweep) {
    RelChange change;
    RelChange pi_change;

    ws.refresh(design, state);  // bound drift from the rank-one corrections
    const auto [el1, el2] = expected_L(state, design, y);
    (void)el1;
    const auto old_tau = state.eta_tau;
    update_tau(state, prior, y.size(), el2);
    change.add(old_tau[0], state.eta_tau[0]);
    change.add(old_tau[1], state.eta_tau[1]);
    const double e_tau = state.e_tau();

    for (int i : state.active) {
      const double os1 = state.eta_s1[i], os2 = state.eta_s2[i];
      update_sigma(state, prior, i);
      change.add(os1, state.eta_s1[i]);
      change.add(os2, state.eta_s2[i]);

      const double op1 = state.eta_p1[i], op2 = state.eta_p2[i];
      update_pi(state, prior, i);
      change.add(op1, state.eta_p1[i]);
      change.add(op2, state.eta_p2[i]);

      const double oi = state.eta_iota[i];
      const double opi = state.pi_tilde[i];
      update_iota(state, i, design, ws, e_tau);
      change.add(oi, state.eta_iota[i]);
      pi_change.add(opi, state.pi_tilde[i]);

      const double ow1 = state.eta_w1[i], ow2 = state.eta_w2[i];
      update_w(state, i, design, ws, e_tau);
      change.add(ow1, state.eta_w1[i]);
      change.add(ow2, state.eta_w2[i]);
    }

    check_finite(state, sweep);
    state.elbo_trace.push_back(elbo(state, design, y, prior));

    if (pi_change.value < config.delta_pi) {
      std::vector<int> kept;
      kept.reserve(state.active.size());
      for (int i : state.active) {
        if (state.pi_tilde[i] > config.eps_pi) kept.push_back(i);
      }
      state.active = std::move(kept);
    }

    if (change.value < config.delta) {
      converged = true;
      ++sweep;
      break;
    }
  }

  FitResult result;
  result.converged = converged;
  result.sweeps = sweep;
  result.pce.spec = spec;
  result.pce.coeff_mean = state.m.matrix();
  result.pce.coeff_var = state.rho.inverse().matrix();
  result.pce.success_prob = state.pi_tilde.matrix();
  result.pce.source = "rvm";
  result.state = std::move(state);
  return result;
}

FitResult fit(const Dataset& ds, const BasisSpec& spec, const PriorConfig& prior,
              const FitConfig& config) {
  ds.validate();
  const DesignMatrix design = evaluate_design(spec, ds.Xi);
  return fit(design, ds.y, spec, prior, config);
}

}  // namespace pcervm::rvm
