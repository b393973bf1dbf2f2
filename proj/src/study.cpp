#include "pcervm/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pcervm/cs.hpp"
#include "pcervm/metrics.hpp"
#include "pcervm/ohagan.hpp"
#include "pcervm/rng.hpp"

namespace pcervm {

using nlohmann::json;

StudyKind study_kind_from_string(const std::string& name) {
  if (name == "vary_c") return StudyKind::VaryC;
  if (name == "vary_P") return StudyKind::VaryP;
  if (name == "vary_N") return StudyKind::VaryN;
  throw std::invalid_argument("unknown study kind: " + name);
}

const char* study_kind_name(StudyKind k) {
  switch (k) {
    case StudyKind::VaryC: return "vary_c";
    case StudyKind::VaryP: return "vary_P";
    case StudyKind::VaryN: return "vary_N";
  }
  return "?";
}

std::pair<double, double> bootstrap_stat_ci(
    const Eigen::VectorXd& samples, int B, double alpha, std::uint64_t seed,
    const std::function<double(const Eigen::VectorXd&)>& stat) {
  if (samples.size() < 1 || B < 100) {
    throw std::invalid_argument("bootstrap_stat_ci: bad arguments");
  }
  const std::size_t n = std::size_t(samples.size());
  Rng rng(seed);
  std::vector<double> stats(static_cast<std::size_t>(B));
  Eigen::VectorXd resampled(samples.size());
  for (int b = 0; b < B; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      resampled[Eigen::Index(i)] = samples[Eigen::Index(rng.next_u64() % n)];
    }
    stats[std::size_t(b)] = stat(resampled);
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

namespace {

double sample_std(const Eigen::VectorXd& v) {
  const double mu = v.mean();
  return std::sqrt((v.array() - mu).square().sum() / double(v.size()));
}

json moments_json(const MomentSummary& m) {
  return {{"mean", m.mean},
          {"std", m.std_dev},
          {"skewness", m.skewness},
          {"kurtosis", m.kurtosis}};
}

json cell_metrics(const SparsePce& pce, const Eigen::MatrixXd& val_xi,
                  const Eigen::VectorXd& val_y, std::int64_t n_mc, std::uint64_t seed) {
  json m;
  m["moments"] = moments_json(moments(pce, n_mc, seed));
  m["relative_mse"] = relative_mse(pce, val_xi, val_y);
  m["r2"] = r_squared(predict(pce, val_xi), val_y);
  if (pce.source == "rvm") {
    m["sparsity_index_0.01"] = sparsity_index(pce, 0.01);
    m["sparsity_index_0.95"] = sparsity_index(pce, 0.95);
  } else {
    m["sparsity_index"] = sparsity_index(pce, 0.5);
  }
  return m;
}

}  // namespace

nlohmann::json run_study(const StudyConfig& config) {
  config.prior.validate();
  config.fit.validate();

  const OhaganInstance inst = make_instance(config.K, config.seed);
  const Dataset validation =
      sample_dataset(inst, config.n_validation, config.seed + 2);

  // Direct-MC moment reference on the true function.
  const Dataset mc_ref = sample_dataset(inst, Eigen::Index(config.n_mc_moments),
                                        config.seed + 3);
  json reference;
  {
    const auto mean_ci = bootstrap_stat_ci(
        mc_ref.y, config.bootstrap_B, 0.05, config.seed + 4,
        [](const Eigen::VectorXd& v) { return v.mean(); });
    const auto std_ci = bootstrap_stat_ci(mc_ref.y, config.bootstrap_B, 0.05,
                                          config.seed + 5, sample_std);
    reference["mean_ci"] = {mean_ci.first, mean_ci.second};
    reference["std_ci"] = {std_ci.first, std_ci.second};
    reference["n_mc"] = config.n_mc_moments;
    reference["B"] = config.bootstrap_B;
  }

  // Grid cells.  Training data is drawn once at the largest size so that
  // vary_N cells are nested subsets.
  int max_n = config.N;
  if (config.kind == StudyKind::VaryN) {
    for (int n : config.n_grid) max_n = std::max(max_n, n);
  }
  const Dataset train_full = sample_dataset(inst, max_n, config.seed + 1);

  std::size_t n_cells = 0;
  switch (config.kind) {
    case StudyKind::VaryC: n_cells = config.c_grid.size(); break;
    case StudyKind::VaryP: n_cells = config.p_grid.size(); break;
    case StudyKind::VaryN: n_cells = config.n_grid.size(); break;
  }
  if (n_cells == 0) throw std::invalid_argument("run_study: empty grid");

  std::vector<json> cells(n_cells);
  auto run_cell = [&](std::size_t idx) {
    json cell;
    try {
      rvm::PriorConfig prior = config.prior;
      prior.c = config.c;
      int P = config.P;
      Eigen::Index N = config.N;
      switch (config.kind) {
        case StudyKind::VaryC:
          prior.c = config.c_grid[idx];
          cell["params"] = {{"c", prior.c}, {"P", P}, {"N", N}};
          break;
        case StudyKind::VaryP:
          P = config.p_grid[idx];
          cell["params"] = {{"c", prior.c}, {"P", P}, {"N", N}};
          break;
        case StudyKind::VaryN:
          N = config.n_grid[idx];
          cell["params"] = {{"c", prior.c}, {"P", P}, {"N", N}};
          break;
      }
      Dataset train;
      train.Xi = train_full.Xi.topRows(N);
      train.y = train_full.y.head(N);
      train.source = train_full.source;

      const BasisSpec spec = build_index_set(config.K, P, Truncation::TD);
      const DesignMatrix design = evaluate_design(spec, train.Xi);
      const auto fit = rvm::fit(design, train.y, spec, prior, config.fit);

      int n_active = 0;
      for (Eigen::Index i = 0; i < fit.pce.success_prob.size(); ++i) {
        if (fit.pce.success_prob[i] > config.fit.eps_pi) ++n_active;
      }
      cell["fit_summary"] = {{"converged", fit.converged},
                             {"sweeps", fit.sweeps},
                             {"n_terms", spec.size()},
                             {"n_active", n_active}};
      cell["metrics"] =
          cell_metrics(fit.pce, validation.Xi, validation.y, config.n_mc_moments,
                       config.seed + 10 + std::uint64_t(idx));
      cell["elbo_trace"] = fit.state.elbo_trace;

      if (config.with_cs) {
        cs::CsConfig cs_config;
        const auto cs_fit = cs::fit_cs(design, train.y, spec, cs_config);
        json cs_cell = cell_metrics(cs_fit.pce, validation.Xi, validation.y,
                                    config.n_mc_moments,
                                    config.seed + 10 + std::uint64_t(idx));
        cs_cell["converged"] = cs_fit.converged;
        cs_cell["l2_sq_distance_to_rvm"] = l2_sq_distance(fit.pce, cs_fit.pce);
        cell["cs"] = cs_cell;
      }
    } catch (const std::exception& e) {
      cell["error"] = e.what();
    }
    cells[idx] = std::move(cell);
  };

  if (config.jobs <= 1) {
    for (std::size_t i = 0; i < n_cells; ++i) run_cell(i);
  } else {
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    const int n_workers = std::min<int>(config.jobs, int(n_cells));
    for (int w = 0; w < n_workers; ++w) {
      workers.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < n_cells; i = next.fetch_add(1)) {
          run_cell(i);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  json report;
  report["study_kind"] = study_kind_name(config.kind);
  report["seed"] = config.seed;
  switch (config.kind) {
    case StudyKind::VaryC: report["grid"] = config.c_grid; break;
    case StudyKind::VaryP: report["grid"] = config.p_grid; break;
    case StudyKind::VaryN: report["grid"] = config.n_grid; break;
  }
  report["reference"] = reference;
  report["cells"] = cells;
  return report;
}

std::string render_study_table(const nlohmann::json& report) {
  std::ostringstream out;
  out << "study: " << report.at("study_kind").get<std::string>()
      << "  seed: " << report.at("seed") << "\n";
  const auto& ref = report.at("reference");
  out << "MC reference  mean in [" << ref.at("mean_ci")[0] << ", " << ref.at("mean_ci")[1]
      << "]  std in [" << ref.at("std_ci")[0] << ", " << ref.at("std_ci")[1] << "]\n\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %10s %10s %10s %10s %12s %10s\n", "cell",
                "mean", "std", "skew", "kurt", "rel_mse", "active");
  out << line;
  for (const auto& cell : report.at("cells")) {
    if (cell.contains("error")) {
      out << "  error: " << cell.at("error").get<std::string>() << "\n";
      continue;
    }
    const auto& p = cell.at("params");
    const auto& m = cell.at("metrics").at("moments");
    std::ostringstream name;
    name << "c=" << p.at("c") << " P=" << p.at("P") << " N=" << p.at("N");
    std::snprintf(line, sizeof(line), "%-24s %10.4f %10.4f %10.4f %10.4f %12.4e %10d\n",
                  name.str().c_str(), m.at("mean").get<double>(),
                  m.at("std").get<double>(), m.at("skewness").get<double>(),
                  m.at("kurtosis").get<double>(),
                  cell.at("metrics").at("relative_mse").get<double>(),
                  cell.at("fit_summary").at("n_active").get<int>());
    out << line;
  }
  return out.str();
}

}  // namespace pcervm
