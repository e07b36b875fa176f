// The normalized signed Gram matrix G and its semi-norm arithmetic.
//
// G_ij = y_i y_j K(x_i,x_j) / sqrt(K(x_i,x_i) K(x_j,x_j)), so G has unit
// diagonal, is symmetric by construction and positive semi-definite whenever
// K is a valid kernel. Everything downstream (losses, solvers, certificates)
// is expressed through <a,b>_G = a^T G b and the semi-norm ||a||_G.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ksep/dataset.hpp"
#include "ksep/types.hpp"

namespace ksep {

/// Dense, immutable, unit-diagonal PSD matrix. Built once per dataset;
/// all solver iterations are mat-vec products against it.
class GramMatrix {
 public:
  /// Validates unit diagonal (exact), symmetry (exact) and |G_ij| <= 1 + 1e-12.
  /// Entries beyond 1 in magnitude mean the input was not a valid kernel.
  static GramMatrix from_entries(Matrix entries) {
    if (entries.rows() != entries.cols() || entries.rows() < 1)
      throw std::invalid_argument("Gram matrix must be square and nonempty");
    if (!entries.allFinite())
      throw std::invalid_argument("Gram matrix has a non-finite entry");
    const Index n = entries.rows();
    for (Index i = 0; i < n; ++i) {
      if (entries(i, i) != 1.0)
        throw std::invalid_argument("Gram diagonal must be exactly 1 (index " +
                                    std::to_string(i) + ")");
      for (Index j = i + 1; j < n; ++j) {
        if (entries(i, j) != entries(j, i))
          throw std::invalid_argument("Gram matrix must be exactly symmetric");
        if (std::abs(entries(i, j)) > 1.0 + 1e-12)
          throw std::invalid_argument(
              "Gram entry exceeds 1 in magnitude at (" + std::to_string(i) + "," +
              std::to_string(j) + "); the kernel matrix is not positive "
              "semi-definite");
      }
    }
    return GramMatrix(std::move(entries));
  }

  Index size() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  explicit GramMatrix(Matrix entries) : entries_(std::move(entries)) {}

  Matrix entries_;
};

namespace detail {

/// The one place where raw kernel values become G: apply label signs and
/// divide by sqrt of the diagonal. The diagonal becomes exactly 1, each pair
/// is computed once and mirrored so symmetry is exact.
inline Matrix normalize_signed_gram(const Matrix& raw, const Vector& labels) {
  const Index n = raw.rows();
  if (labels.size() != n)
    throw std::invalid_argument("label count does not match kernel matrix size");
  for (Index i = 0; i < n; ++i) {
    if (!(raw(i, i) > 0.0))
      throw std::invalid_argument(
          "degenerate point: K(x,x) must be strictly positive (index " +
          std::to_string(i) + ")");
  }
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      // sqrt(K_ii K_jj) as a single rounded product keeps K/sqrt(K*K) == 1
      // exact for coincident points
      const double value =
          labels[i] * labels[j] * raw(i, j) / std::sqrt(raw(i, i) * raw(j, j));
      g(i, j) = value;
      g(j, i) = value;
    }
  }
  return g;
}

}  // namespace detail

/// Builds the normalized signed Gram matrix for a dataset under a kernel.
/// For precomputed kernels the stored raw matrix must match the dataset size.
inline GramMatrix build_gram(const LabeledDataset& data, const KernelSpec& spec) {
  const Index n = data.size();
  if (spec.kind() == KernelSpec::Kind::precomputed) {
    if (spec.matrix().rows() != n)
      throw std::invalid_argument(
          "precomputed kernel size does not match dataset size");
    return GramMatrix::from_entries(
        detail::normalize_signed_gram(spec.matrix(), data.labels()));
  }
  Matrix raw(n, n);
  for (Index i = 0; i < n; ++i) {
    const Vector xi = data.point(i);
    raw(i, i) = evaluate_kernel(spec, xi, xi);
    for (Index j = i + 1; j < n; ++j) {
      const double value = evaluate_kernel(spec, xi, data.point(j));
      raw(i, j) = value;
      raw(j, i) = value;
    }
  }
  return GramMatrix::from_entries(
      detail::normalize_signed_gram(raw, data.labels()));
}

namespace detail {
inline void check_gram_dim(const GramMatrix& g, const Vector& v,
                           const char* what) {
  if (v.size() != g.size())
    throw std::invalid_argument(std::string(what) +
                                ": vector size does not match Gram size");
}
}  // namespace detail

/// <a,b>_G = a^T G b. Symmetric in its arguments.
inline double g_inner(const GramMatrix& g, const Vector& a, const Vector& b) {
  detail::check_gram_dim(g, a, "g_inner");
  detail::check_gram_dim(g, b, "g_inner");
  return a.dot(g.matrix() * b);
}

/// a^T G a clamped at zero. G is PSD in exact arithmetic; round-off may
/// produce tiny negatives which must not reach sqrt.
inline double g_norm_squared(const GramMatrix& g, const Vector& a) {
  detail::check_gram_dim(g, a, "g_norm");
  const double q = a.dot(g.matrix() * a);
  return q > 0.0 ? q : 0.0;
}

/// Semi-norm ||a||_G = sqrt(max(a^T G a, 0)). Can vanish on nonzero vectors.
inline double g_norm(const GramMatrix& g, const Vector& a) {
  return std::sqrt(g_norm_squared(g, a));
}

/// The vector G*alpha of normalized signed functional margins
/// y_j f_alpha(x_j) / sqrt(K(x_j,x_j)).
inline Vector decision_values(const GramMatrix& g, const CoefficientVector& alpha) {
  detail::check_gram_dim(g, alpha, "decision_values");
  return g.matrix() * alpha;
}

/// f_alpha(x) = sum_i alpha_i y_i K(x_i,x) / sqrt(K(x_i,x_i)).
/// The sign of the returned value is the predicted label.
inline double predict(const LabeledDataset& data, const KernelSpec& spec,
                      const CoefficientVector& alpha, const Vector& x) {
  if (spec.kind() == KernelSpec::Kind::precomputed)
    throw std::invalid_argument(
        "predict is unsupported for precomputed kernels; they are only "
        "defined on training indices");
  if (alpha.size() != data.size())
    throw std::invalid_argument("predict: coefficient size does not match dataset");
  if (x.size() != data.dim())
    throw std::invalid_argument("predict: point dimension does not match dataset");
  double value = 0.0;
  for (Index i = 0; i < data.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    const Vector xi = data.point(i);
    const double self = evaluate_kernel(spec, xi, xi);
    if (!(self > 0.0))
      throw std::invalid_argument(
          "degenerate point: K(x,x) must be strictly positive (index " +
          std::to_string(i) + ")");
    value += alpha[i] * data.label(i) * evaluate_kernel(spec, xi, x) /
             std::sqrt(self);
  }
  return value;
}

}  // namespace ksep
