// Probability-simplex vectors, the worst-case distribution and the exact
// Euclidean projection onto the simplex.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ksep/types.hpp"

namespace ksep {

/// Nonnegative n-vector summing to one (within 1e-12). Dual iterates p and
/// the solvers' coefficient iterates alpha live here.
class SimplexVector {
 public:
  explicit SimplexVector(Vector p) : p_(std::move(p)) {
    if (p_.size() < 1) throw std::invalid_argument("simplex vector is empty");
    if (!p_.allFinite())
      throw std::invalid_argument("simplex vector has a non-finite entry");
    if (p_.minCoeff() < 0.0)
      throw std::invalid_argument("simplex vector has a negative entry");
    if (std::abs(p_.sum() - 1.0) > 1e-12)
      throw std::invalid_argument("simplex vector entries must sum to 1");
  }

  static SimplexVector uniform(Index n) {
    if (n < 1) throw std::invalid_argument("simplex dimension must be >= 1");
    return renormalized(Vector::Constant(n, 1.0 / static_cast<double>(n)));
  }

  static SimplexVector vertex(Index n, Index i) {
    if (n < 1 || i < 0 || i >= n)
      throw std::invalid_argument("simplex vertex index out of range");
    Vector p = Vector::Zero(n);
    p[i] = 1.0;
    return SimplexVector(std::move(p));
  }

  /// Clamps negative round-off to zero and rescales so the sum is 1 up to one
  /// final additive correction on the largest entry. Throws if the input has
  /// no positive mass.
  static SimplexVector renormalized(Vector p) {
    if (p.size() < 1) throw std::invalid_argument("simplex vector is empty");
    if (!p.allFinite())
      throw std::invalid_argument("cannot normalize a non-finite vector");
    p = p.cwiseMax(0.0);
    const double total = p.sum();
    if (!(total > 0.0))
      throw std::invalid_argument("cannot normalize a vector with no positive mass");
    p /= total;
    Index top;
    p.maxCoeff(&top);
    p[top] += 1.0 - p.sum();
    return SimplexVector(std::move(p));
  }

  Index size() const { return p_.size(); }
  const Vector& vec() const { return p_; }
  double operator[](Index i) const { return p_[i]; }

 private:
  Vector p_;
};

/// Uniform distribution over the argmin entries of g_alpha (ties detected
/// with absolute tolerance 1e-12). Attains min_p <g_alpha, p> over the simplex.
inline SimplexVector worst_case_distribution(const Vector& g_alpha) {
  if (g_alpha.size() < 1)
    throw std::invalid_argument("worst_case_distribution: empty input");
  if (!g_alpha.allFinite())
    throw std::invalid_argument("worst_case_distribution: non-finite input");
  const double low = g_alpha.minCoeff();
  Vector p = Vector::Zero(g_alpha.size());
  Index ties = 0;
  for (Index i = 0; i < g_alpha.size(); ++i) {
    if (g_alpha[i] <= low + 1e-12) {
      p[i] = 1.0;
      ++ties;
    }
  }
  p /= static_cast<double>(ties);
  return SimplexVector::renormalized(std::move(p));
}

/// Exact Euclidean projection onto the simplex by the sort-and-threshold
/// rule: find tau with sum_i max(v_i - tau, 0) = 1. Full descending sort,
/// O(n log n), deterministic.
inline SimplexVector project_simplex(const Vector& v) {
  if (v.size() < 1) throw std::invalid_argument("project_simplex: empty input");
  if (!v.allFinite())
    throw std::invalid_argument("project_simplex: non-finite input");
  const Index n = v.size();
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double prefix = 0.0;
  double tau = 0.0;
  for (Index k = 0; k < n; ++k) {
    prefix += sorted[k];
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  return SimplexVector::renormalized((v.array() - tau).cwiseMax(0.0).matrix());
}

}  // namespace ksep
