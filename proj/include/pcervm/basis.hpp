#pragma once

// Orthonormal polynomial bases and multi-index truncation sets.
// Only the Hermite family (standard-normal measure) is provided; the
// univariate evaluator is a seam so other families can be added later.

#include <cstdint>
#include <string>
#include <vector>

namespace pcervm {

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

enum class Truncation { TD, LQ, TP, HC };

Truncation truncation_from_string(const std::string& name);
const char* truncation_name(Truncation t);

struct BasisSpec {
  int K = 1;
  int P = 0;
  Truncation rule = Truncation::TD;
  double q = 1.0;  // only meaningful for LQ
  std::vector<MultiIndex> indices;

  std::size_t size() const { return indices.size(); }
};

// Probabilists' Hermite polynomial of degree n, normalized so that
// E[psi_m psi_n] = delta_mn under N(0,1).  Uses the orthonormal
// three-term recurrence psi_{n+1} = (x psi_n - sqrt(n) psi_{n-1}) / sqrt(n+1).
double hermite_orthonormal(int n, double x);

// All multi-indices admitted by the rule, in graded-lexicographic order
// (ascending total degree, lexicographic within a degree).
BasisSpec build_index_set(int K, int P, Truncation rule, double q = 1.0);

}  // namespace pcervm
