#pragma once

// Experiment harness: seeded benchmark studies over a grid of the Beta
// hyperparameter c, the truncation order P, or the training-set size N.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcervm/rvm.hpp"

namespace pcervm {

enum class StudyKind { VaryC, VaryP, VaryN };

StudyKind study_kind_from_string(const std::string& name);
const char* study_kind_name(StudyKind k);

struct StudyConfig {
  StudyKind kind = StudyKind::VaryC;
  int K = 10;
  std::uint64_t seed = 42;

  std::vector<double> c_grid{0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<int> p_grid{2, 3, 4, 5, 6};
  std::vector<int> n_grid{400, 800, 1200, 1600, 2000};

  int N = 600;    // training points (vary_c, vary_P)
  int P = 4;      // truncation order (vary_c, vary_N)
  double c = 0.2; // Beta c (vary_P, vary_N)

  int n_validation = 10000;
  std::int64_t n_mc_moments = 100000;  // direct-MC moment reference
  int bootstrap_B = 1000;
  int jobs = 1;
  bool with_cs = true;

  rvm::PriorConfig prior;
  rvm::FitConfig fit;
};

// One JSON record per grid cell plus a Monte Carlo reference block.
// Cells that fail to fit carry an "error" field instead of aborting the
// study.
nlohmann::json run_study(const StudyConfig& config);

// Percentile bootstrap interval of an arbitrary statistic.
std::pair<double, double> bootstrap_stat_ci(
    const Eigen::VectorXd& samples, int B, double alpha, std::uint64_t seed,
    const std::function<double(const Eigen::VectorXd&)>& stat);

// Aligned-column text rendering of a study report.
std::string render_study_table(const nlohmann::json& report);

}  // namespace pcervm
