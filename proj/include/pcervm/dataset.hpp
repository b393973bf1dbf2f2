#pragma once

#include <string>

#include <Eigen/Dense>

namespace pcervm {

// Immutable input/output samples.  CSV layout: K input columns followed
// by one output column; an optional header line xi_1,...,xi_K,y is
// auto-detected.
struct Dataset {
  Eigen::MatrixXd Xi;  // N x K
  Eigen::VectorXd y;   // N
  std::string source;

  Eigen::Index n() const { return y.size(); }
  Eigen::Index k() const { return Xi.cols(); }

  // Throws std::invalid_argument on NaN/Inf, empty data or ragged rows.
  void validate() const;
};

Dataset load_dataset_csv(const std::string& path);
void save_dataset_csv(const Dataset& ds, const std::string& path);

// Plain numeric CSV (optional header auto-detected), no output column.
Eigen::MatrixXd load_matrix_csv(const std::string& path);

}  // namespace pcervm
