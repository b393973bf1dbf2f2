#include "pcervm/dataset.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pcervm {

void Dataset::validate() const {
  if (y.size() == 0) throw std::invalid_argument("dataset: empty");
  if (Xi.rows() != y.size()) throw std::invalid_argument("dataset: row count mismatch");
  if (!Xi.allFinite() || !y.allFinite()) {
    throw std::invalid_argument("dataset: non-finite values");
  }
}

namespace {

std::vector<double> parse_row(const std::string& line, bool* numeric) {
  std::vector<double> out;
  *numeric = true;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(cell, &pos);
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size()) {
        *numeric = false;
        return {};
      }
      out.push_back(v);
    } catch (const std::exception&) {
      *numeric = false;
      return {};
    }
  }
  return out;
}

}  // namespace

namespace {

std::vector<std::vector<double>> load_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool numeric = false;
    auto row = parse_row(line, &numeric);
    if (!numeric) {
      if (first) {  // header line
        first = false;
        continue;
      }
      throw std::invalid_argument("dataset: non-numeric row in " + path);
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("dataset: ragged rows in " + path);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Dataset load_dataset_csv(const std::string& path) {
  const auto rows = load_rows(path);
  if (rows.empty() || rows.front().size() < 2) {
    throw std::invalid_argument("dataset: need at least one input column and one output column");
  }
  const Eigen::Index N = Eigen::Index(rows.size());
  const Eigen::Index K = Eigen::Index(rows.front().size()) - 1;
  Dataset ds;
  ds.Xi.resize(N, K);
  ds.y.resize(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < K; ++j) ds.Xi(i, j) = rows[i][j];
    ds.y(i) = rows[i][K];
  }
  ds.source = path;
  ds.validate();
  return ds;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  const auto rows = load_rows(path);
  if (rows.empty()) throw std::invalid_argument("matrix csv: empty file " + path);
  const Eigen::Index N = Eigen::Index(rows.size());
  const Eigen::Index C = Eigen::Index(rows.front().size());
  Eigen::MatrixXd m(N, C);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < C; ++j) m(i, j) = rows[std::size_t(i)][std::size_t(j)];
  }
  return m;
}

void save_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  for (Eigen::Index j = 0; j < ds.k(); ++j) out << "xi_" << (j + 1) << ",";
  out << "y\n";
  char buf[32];
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    for (Eigen::Index j = 0; j < ds.k(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.Xi(i, j));
      out << buf << ",";
    }
    std::snprintf(buf, sizeof(buf), "%.17g", ds.y(i));
    out << buf << "\n";
  }
  if (!out) throw std::runtime_error("error writing dataset file: " + path);
}

}  // namespace pcervm
