// Command-line surface for sparse PCE fitting:
//   synth | fit-rvm | fit-cs | predict | compare | moments | study
// Exit codes: 0 success, 1 usage, 2 data/format, 3 non-convergence
// under --strict.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcervm/cs.hpp"
#include "pcervm/dataset.hpp"
#include "pcervm/json_io.hpp"
#include "pcervm/metrics.hpp"
#include "pcervm/ohagan.hpp"
#include "pcervm/rvm.hpp"
#include "pcervm/study.hpp"

namespace {

using nlohmann::json;
using namespace pcervm;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNotConverged = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path == "-" || out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write output file: " + out_path);
  out << text;
  if (!out) throw std::runtime_error("error writing output file: " + out_path);
}

void emit_json(const json& j, const std::string& out_path) {
  emit(j.dump(2) + "\n", out_path);
}

struct BasisOptions {
  int order = 4;
  std::string rule = "TD";
  double q = 1.0;
};

void add_basis_options(CLI::App* cmd, BasisOptions& opt) {
  cmd->add_option("--order", opt.order, "truncation order P")->check(CLI::NonNegativeNumber);
  cmd->add_option("--trunc", opt.rule, "truncation rule (TD, LQ, TP, HC)");
  cmd->add_option("--q", opt.q, "LQ exponent in (0, 1]");
}

int cmd_synth(int K, Eigen::Index N, std::uint64_t seed, std::uint64_t sample_seed,
              double noise, const std::string& out) {
  const OhaganInstance inst = make_instance(K, seed);
  const Dataset ds = sample_dataset(inst, N, sample_seed, noise);
  save_dataset_csv(ds, out);
  write_json_file(to_json(inst), out + ".instance.json");
  return 0;
}

int cmd_fit_rvm(const std::string& data_path, const BasisOptions& basis,
                const rvm::PriorConfig& prior, const rvm::FitConfig& config,
                const std::string& out, bool strict) {
  const Dataset ds = load_dataset_csv(data_path);
  const BasisSpec spec =
      build_index_set(int(ds.k()), basis.order, truncation_from_string(basis.rule), basis.q);
  const auto fit = rvm::fit(ds, spec, prior, config);
  json j = to_json(fit, prior, config);
  j["metadata"] = {{"data", data_path}};
  emit_json(j, out);
  if (strict && !fit.converged) {
    std::cerr << "fit-rvm: not converged after " << fit.sweeps << " sweeps\n";
    return kExitNotConverged;
  }
  return 0;
}

int cmd_fit_cs(const std::string& data_path, const BasisOptions& basis,
               const cs::CsConfig& config, const std::string& out, bool strict) {
  const Dataset ds = load_dataset_csv(data_path);
  const BasisSpec spec =
      build_index_set(int(ds.k()), basis.order, truncation_from_string(basis.rule), basis.q);
  const auto fit = cs::fit_cs(ds, spec, config);
  json j = to_json(fit, config);
  j["metadata"] = {{"data", data_path}};
  emit_json(j, out);
  if (strict && !fit.converged) {
    std::cerr << "fit-cs: not converged after " << fit.iters << " iterations\n";
    return kExitNotConverged;
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& inputs_path,
                const std::string& out) {
  const SparsePce pce = model_from_json(read_json_file(model_path));
  Eigen::MatrixXd Xi = load_matrix_csv(inputs_path);
  if (Xi.cols() == pce.spec.K + 1) Xi = Xi.leftCols(pce.spec.K).eval();
  const Eigen::VectorXd y = predict(pce, Xi);
  std::ostringstream text;
  text << "y_pred\n";
  char buf[32];
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", y[i]);
    text << buf << "\n";
  }
  emit(text.str(), out);
  return 0;
}

int cmd_compare(const std::string& model_a, const std::string& model_b,
                const std::string& validation_path, const std::string& out) {
  const SparsePce a = model_from_json(read_json_file(model_a));
  const SparsePce b = model_from_json(read_json_file(model_b));
  const Dataset val = load_dataset_csv(validation_path);
  json j;
  j["mse_A"] = relative_mse(a, val.Xi, val.y);
  j["mse_B"] = relative_mse(b, val.Xi, val.y);
  j["l2_sq_distance"] = l2_sq_distance(a, b);
  j["r2_A"] = r_squared(predict(a, val.Xi), val.y);
  j["r2_B"] = r_squared(predict(b, val.Xi), val.y);
  j["sparsity_A"] = sparsity_index(a, 0.95);
  j["sparsity_B"] = sparsity_index(b, 0.95);
  emit_json(j, out);
  return 0;
}

int cmd_moments(const std::string& model_path, std::int64_t n_mc, std::uint64_t seed,
                const std::string& out) {
  const SparsePce pce = model_from_json(read_json_file(model_path));
  const MomentSummary m = moments(pce, n_mc, seed);
  emit_json(json{{"mean", m.mean},
                 {"std", m.std_dev},
                 {"skewness", m.skewness},
                 {"kurtosis", m.kurtosis},
                 {"n_mc", n_mc},
                 {"seed", seed}},
            out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse polynomial chaos surrogates: variational RVM and "
               "Douglas-Rachford compressive sensing"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a seeded benchmark dataset");
  int synth_k = 10;
  Eigen::Index synth_n = 600;
  std::uint64_t synth_seed = 42;
  double synth_noise = 0.0;
  std::string synth_out;
  synth->add_option("--dim", synth_k, "input dimension K")->check(CLI::PositiveNumber);
  synth->add_option("--n", synth_n, "number of samples")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "instance seed");
  std::uint64_t synth_sample_seed = 0;
  bool have_sample_seed = false;
  synth->add_option("--sample-seed", synth_sample_seed,
                    "sampling seed (default: instance seed + 1)")
      ->each([&](const std::string&) { have_sample_seed = true; });
  synth->add_option("--noise", synth_noise, "observation noise std")
      ->check(CLI::NonNegativeNumber);
  synth->add_option("--out", synth_out, "output CSV path")->required();

  // shared fit options
  BasisOptions basis;
  rvm::PriorConfig prior;
  rvm::FitConfig fit_config;
  bool strict = false;
  std::string data_path, out_path = "-";

  auto* fit_rvm = app.add_subcommand("fit-rvm", "fit a sparse PCE with the variational RVM");
  fit_rvm->add_option("--data", data_path, "training CSV")->required();
  add_basis_options(fit_rvm, basis);
  fit_rvm->add_option("--a", prior.a, "Gamma prior shape for coefficient precisions");
  fit_rvm->add_option("--b", prior.b, "Gamma prior rate for coefficient precisions");
  fit_rvm->add_option("--c", prior.c, "Beta prior c for inclusion probabilities");
  fit_rvm->add_option("--d", prior.d, "Beta prior d for inclusion probabilities");
  fit_rvm->add_option("--u", prior.u, "Gamma prior shape for noise precision");
  fit_rvm->add_option("--w", prior.w, "Gamma prior rate for noise precision");
  fit_rvm->add_option("--tol", fit_config.delta, "convergence tolerance");
  fit_rvm->add_option("--pi-tol", fit_config.delta_pi, "pi_tilde convergence tolerance");
  fit_rvm->add_option("--pi-threshold", fit_config.eps_pi, "pruning threshold");
  fit_rvm->add_option("--max-sweeps", fit_config.max_sweeps, "sweep cap");
  fit_rvm->add_flag("--strict", strict, "exit 3 on non-convergence");
  fit_rvm->add_option("--out", out_path, "model JSON path, - for stdout");

  cs::CsConfig cs_config;
  auto* fit_cs_cmd = app.add_subcommand("fit-cs", "fit a PCE by Douglas-Rachford l1 minimization");
  fit_cs_cmd->add_option("--data", data_path, "training CSV")->required();
  add_basis_options(fit_cs_cmd, basis);
  fit_cs_cmd->add_option("--gamma", cs_config.gamma, "prox step scale");
  fit_cs_cmd->add_option("--epsilon", cs_config.epsilon, "residual-ball radius (0 = equality)");
  fit_cs_cmd->add_option("--max-iters", cs_config.max_iters, "iteration cap");
  fit_cs_cmd->add_option("--cs-tol", cs_config.tol, "fixed-point residual tolerance");
  fit_cs_cmd->add_flag("--strict", strict, "exit 3 on non-convergence");
  fit_cs_cmd->add_option("--out", out_path, "model JSON path, - for stdout");

  auto* predict_cmd = app.add_subcommand("predict", "evaluate a fitted model");
  std::string model_path, inputs_path;
  predict_cmd->add_option("--model", model_path, "model JSON")->required();
  predict_cmd->add_option("--inputs", inputs_path, "inputs CSV")->required();
  predict_cmd->add_option("--out", out_path, "predictions CSV, - for stdout");

  auto* compare_cmd = app.add_subcommand("compare", "compare two fitted models");
  std::string model_b_path, validation_path;
  compare_cmd->add_option("--model-a", model_path, "first model JSON")->required();
  compare_cmd->add_option("--model-b", model_b_path, "second model JSON")->required();
  compare_cmd->add_option("--data", validation_path, "validation CSV")->required();
  compare_cmd->add_option("--out", out_path, "comparison JSON, - for stdout");

  auto* moments_cmd = app.add_subcommand("moments", "moments of a fitted expansion");
  std::int64_t n_mc = 100000;
  std::uint64_t mc_seed = 42;
  moments_cmd->add_option("--model", model_path, "model JSON")->required();
  moments_cmd->add_option("--n-mc", n_mc, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  moments_cmd->add_option("--seed", mc_seed, "RNG seed");
  moments_cmd->add_option("--out", out_path, "moments JSON, - for stdout");

  auto* study_cmd = app.add_subcommand("study", "run a benchmark study over a grid");
  StudyConfig study;
  std::string study_kind = "vary_c";
  bool no_cs = false, table = false;
  study_cmd->add_option("--kind", study_kind, "vary_c, vary_P or vary_N");
  study_cmd->add_option("--seed", study.seed, "RNG seed");
  study_cmd->add_option("--dim", study.K, "input dimension K")->check(CLI::PositiveNumber);
  study_cmd->add_option("--n", study.N, "training points (vary_c, vary_P)");
  study_cmd->add_option("--order", study.P, "truncation order (vary_c, vary_N)");
  study_cmd->add_option("--c", study.c, "Beta prior c (vary_P, vary_N)");
  study_cmd->add_option("--c-grid", study.c_grid, "c grid values");
  study_cmd->add_option("--p-grid", study.p_grid, "P grid values");
  study_cmd->add_option("--n-grid", study.n_grid, "N grid values");
  study_cmd->add_option("--n-validation", study.n_validation, "validation points");
  study_cmd->add_option("--n-mc", study.n_mc_moments, "direct-MC reference samples");
  study_cmd->add_option("--bootstrap-b", study.bootstrap_B, "bootstrap resamples");
  study_cmd->add_option("--jobs", study.jobs, "parallel grid cells");
  study_cmd->add_option("--tol", study.fit.delta, "fit convergence tolerance");
  study_cmd->add_option("--max-sweeps", study.fit.max_sweeps, "fit sweep cap");
  study_cmd->add_flag("--no-cs", no_cs, "skip the compressive-sensing comparison");
  study_cmd->add_flag("--table", table, "render the text table instead of JSON");
  study_cmd->add_option("--out", out_path, "report path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      if (!have_sample_seed) synth_sample_seed = synth_seed + 1;
      return cmd_synth(synth_k, synth_n, synth_seed, synth_sample_seed, synth_noise,
                       synth_out);
    }
    if (fit_rvm->parsed()) {
      return cmd_fit_rvm(data_path, basis, prior, fit_config, out_path, strict);
    }
    if (fit_cs_cmd->parsed()) {
      return cmd_fit_cs(data_path, basis, cs_config, out_path, strict);
    }
    if (predict_cmd->parsed()) {
      return cmd_predict(model_path, inputs_path, out_path);
    }
    if (compare_cmd->parsed()) {
      return cmd_compare(model_path, model_b_path, validation_path, out_path);
    }
    if (moments_cmd->parsed()) {
      return cmd_moments(model_path, n_mc, mc_seed, out_path);
    }
    if (study_cmd->parsed()) {
      study.kind = study_kind_from_string(study_kind);
      study.prior.c = study.c;
      study.with_cs = !no_cs;
      const json report = run_study(study);
      if (table) {
        emit(render_study_table(report), out_path);
      } else {
        emit_json(report, out_path);
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
