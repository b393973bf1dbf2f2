#include "pcervm/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcervm {

Truncation truncation_from_string(const std::string& name) {
  if (name == "TD") return Truncation::TD;
  if (name == "LQ") return Truncation::LQ;
  if (name == "TP") return Truncation::TP;
  if (name == "HC") return Truncation::HC;
  throw std::invalid_argument("unknown truncation rule: " + name);
}

const char* truncation_name(Truncation t) {
  switch (t) {
    case Truncation::TD: return "TD";
    case Truncation::LQ: return "LQ";
    case Truncation::TP: return "TP";
    case Truncation::HC: return "HC";
  }
  return "?";
}

double hermite_orthonormal(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_orthonormal: degree must be >= 0");
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = (x * cur - std::sqrt(double(k)) * prev) / std::sqrt(double(k + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

struct Admit {
  Truncation rule;
  int P;
  double q;
  double lq_budget;  // P^q, for the LQ rule

  bool partial_ok(const MultiIndex& alpha, int depth) const {
    switch (rule) {
      case Truncation::TD: {
        int s = 0;
        for (int i = 0; i < depth; ++i) s += alpha[i];
        return s <= P;
      }
      case Truncation::LQ: {
        double s = 0.0;
        for (int i = 0; i < depth; ++i) s += std::pow(double(alpha[i]), q);
        return s <= lq_budget + 1e-9;
      }
      case Truncation::TP:
        return true;  // per-dimension cap already enforced
      case Truncation::HC: {
        long long p = 1;
        for (int i = 0; i < depth; ++i) {
          p *= alpha[i] + 1;
          if (p > P + 1) return false;
        }
        return true;
      }
    }
    return false;
  }
};

void enumerate(const Admit& admit, MultiIndex& alpha, int depth, int K,
               std::vector<MultiIndex>& out) {
  if (depth == K) {
    out.push_back(alpha);
    return;
  }
  for (int a = 0; a <= admit.P; ++a) {
    alpha[depth] = a;
    if (!admit.partial_ok(alpha, depth + 1)) break;  // admissible sets are downward closed
    enumerate(admit, alpha, depth + 1, K, out);
  }
  alpha[depth] = 0;
}

}  // namespace

BasisSpec build_index_set(int K, int P, Truncation rule, double q) {
  if (K < 1) throw std::invalid_argument("build_index_set: K must be >= 1");
  if (P < 0) throw std::invalid_argument("build_index_set: P must be >= 0");
  if (rule == Truncation::LQ && !(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("build_index_set: LQ requires q in (0, 1]");
  }
  Admit admit{rule, P, q, std::pow(double(P), q)};
  BasisSpec spec;
  spec.K = K;
  spec.P = P;
  spec.rule = rule;
  spec.q = q;
  MultiIndex alpha(K, 0);
  enumerate(admit, alpha, 0, K, spec.indices);
  std::sort(spec.indices.begin(), spec.indices.end(),
            [](const MultiIndex& a, const MultiIndex& b) {
              const int da = total_degree(a), db = total_degree(b);
              if (da != db) return da < db;
              return a > b;  // within a degree: leading dimensions first
            });
  return spec;
}

}  // namespace pcervm
