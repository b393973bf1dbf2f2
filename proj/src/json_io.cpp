#include "pcervm/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace pcervm {

namespace {

using nlohmann::json;

json vec_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vec_from_json(const json& a) {
  Eigen::VectorXd v(Eigen::Index(a.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = a[std::size_t(i)].get<double>();
  return v;
}

}  // namespace

nlohmann::json to_json(const BasisSpec& spec) {
  json j;
  j["K"] = spec.K;
  j["P"] = spec.P;
  j["rule"] = truncation_name(spec.rule);
  if (spec.rule == Truncation::LQ) j["q"] = spec.q;
  j["indices"] = spec.indices;
  return j;
}

BasisSpec spec_from_json(const nlohmann::json& j) {
  BasisSpec spec;
  spec.K = j.at("K").get<int>();
  spec.P = j.at("P").get<int>();
  spec.rule = truncation_from_string(j.at("rule").get<std::string>());
  spec.q = j.value("q", 1.0);
  spec.indices = j.at("indices").get<std::vector<MultiIndex>>();
  for (const auto& alpha : spec.indices) {
    if (int(alpha.size()) != spec.K) {
      throw std::invalid_argument("basis spec: multi-index length differs from K");
    }
  }
  return spec;
}

namespace {

json pce_to_json(const SparsePce& pce) {
  json j;
  j["spec"] = to_json(pce.spec);
  j["source"] = pce.source;
  j["coeff_mean"] = vec_to_json(pce.coeff_mean);
  j["coeff_var"] = vec_to_json(pce.coeff_var);
  j["success_prob"] = vec_to_json(pce.success_prob);
  j["metadata"] = pce.metadata;
  return j;
}

}  // namespace

nlohmann::json to_json(const rvm::FitResult& fit, const rvm::PriorConfig& prior,
                       const rvm::FitConfig& config) {
  json j = pce_to_json(fit.pce);
  j["active"] = fit.state.active;
  j["prior"] = {{"a", prior.a}, {"b", prior.b}, {"c", prior.c},
                {"d", prior.d}, {"u", prior.u}, {"w", prior.w}};
  j["config"] = {{"delta", config.delta},
                 {"delta_pi", config.delta_pi},
                 {"eps_pi", config.eps_pi},
                 {"max_sweeps", config.max_sweeps}};
  j["elbo_trace"] = fit.state.elbo_trace;
  j["converged"] = fit.converged;
  j["sweeps"] = fit.sweeps;
  return j;
}

nlohmann::json to_json(const cs::CsResult& fit, const cs::CsConfig& config) {
  json j = pce_to_json(fit.pce);
  j["config"] = {{"gamma", config.gamma},
                 {"max_iters", config.max_iters},
                 {"tol", config.tol},
                 {"epsilon", config.epsilon}};
  j["converged"] = fit.converged;
  j["iters"] = fit.iters;
  return j;
}

SparsePce model_from_json(const nlohmann::json& j) {
  SparsePce pce;
  pce.spec = spec_from_json(j.at("spec"));
  pce.source = j.at("source").get<std::string>();
  pce.coeff_mean = vec_from_json(j.at("coeff_mean"));
  pce.coeff_var = vec_from_json(j.at("coeff_var"));
  pce.success_prob = vec_from_json(j.at("success_prob"));
  if (j.contains("metadata")) {
    pce.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  }
  const auto n = Eigen::Index(pce.spec.size());
  if (pce.coeff_mean.size() != n || pce.coeff_var.size() != n ||
      pce.success_prob.size() != n) {
    throw std::invalid_argument("model file: coefficient vector length differs from basis");
  }
  return pce;
}

nlohmann::json to_json(const OhaganInstance& inst) {
  json j;
  j["K"] = inst.dim();
  j["seed"] = inst.seed;
  j["a1"] = vec_to_json(inst.a1);
  j["a2"] = vec_to_json(inst.a2);
  j["a3"] = vec_to_json(inst.a3);
  json m = json::array();
  for (Eigen::Index i = 0; i < inst.M.rows(); ++i) {
    m.push_back(vec_to_json(inst.M.row(i).transpose()));
  }
  j["M"] = m;
  return j;
}

OhaganInstance instance_from_json(const nlohmann::json& j) {
  OhaganInstance inst;
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.a1 = vec_from_json(j.at("a1"));
  inst.a2 = vec_from_json(j.at("a2"));
  inst.a3 = vec_from_json(j.at("a3"));
  const auto& m = j.at("M");
  const auto K = Eigen::Index(m.size());
  inst.M.resize(K, K);
  for (Eigen::Index i = 0; i < K; ++i) {
    inst.M.row(i) = vec_from_json(m[std::size_t(i)]).transpose();
  }
  return inst;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("error writing file: " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);
}

}  // namespace pcervm
