// Labeled data and kernel evaluation.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ksep/types.hpp"

namespace ksep {

/// Binary classification data: one row of `points` per example, labels in {-1,+1}.
/// Immutable after construction.
class LabeledDataset {
 public:
  LabeledDataset(Matrix points, Vector labels)
      : points_(std::move(points)), labels_(std::move(labels)) {
    if (points_.rows() < 1 || points_.cols() < 1)
      throw std::invalid_argument(
          "dataset needs at least one point with at least one feature");
    if (labels_.size() != points_.rows())
      throw std::invalid_argument("label count does not match point count");
    if (!points_.allFinite())
      throw std::invalid_argument("dataset contains a non-finite feature");
    for (Index i = 0; i < labels_.size(); ++i) {
      if (labels_[i] != 1.0 && labels_[i] != -1.0)
        throw std::invalid_argument("label must be -1 or +1 (example " +
                                    std::to_string(i) + ")");
    }
  }

  Index size() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  const Vector& labels() const { return labels_; }
  Vector point(Index i) const { return points_.row(i).transpose(); }
  double label(Index i) const { return labels_[i]; }

 private:
  Matrix points_;
  Vector labels_;
};

/// Kernel selector: linear, polynomial, RBF, or a user-supplied raw kernel
/// matrix over the training indices.
class KernelSpec {
 public:
  enum class Kind { linear, polynomial, rbf, precomputed };

  static KernelSpec linear() { return KernelSpec(Kind::linear); }

  static KernelSpec polynomial(int degree, double offset) {
    if (degree < 1)
      throw std::invalid_argument("polynomial degree must be a positive integer");
    if (!(offset >= 0.0) || !std::isfinite(offset))
      throw std::invalid_argument("polynomial offset must be finite and >= 0");
    KernelSpec spec(Kind::polynomial);
    spec.degree_ = degree;
    spec.offset_ = offset;
    return spec;
  }

  static KernelSpec rbf(double bandwidth) {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
      throw std::invalid_argument("rbf bandwidth must be finite and > 0");
    KernelSpec spec(Kind::rbf);
    spec.bandwidth_ = bandwidth;
    return spec;
  }

  /// Raw kernel values K(x_i,x_j) on training indices. Symmetry (within 1e-9,
  /// entrywise) and a strictly positive diagonal are required here; the label
  /// signs and normalization are applied later by build_gram.
  static KernelSpec precomputed(Matrix raw_kernel) {
    if (raw_kernel.rows() != raw_kernel.cols() || raw_kernel.rows() < 1)
      throw std::invalid_argument("precomputed kernel matrix must be square");
    if (!raw_kernel.allFinite())
      throw std::invalid_argument("precomputed kernel matrix has a non-finite entry");
    const Index n = raw_kernel.rows();
    for (Index i = 0; i < n; ++i) {
      if (!(raw_kernel(i, i) > 0.0))
        throw std::invalid_argument(
            "precomputed kernel diagonal must be strictly positive (index " +
            std::to_string(i) + ")");
      for (Index j = i + 1; j < n; ++j) {
        if (std::abs(raw_kernel(i, j) - raw_kernel(j, i)) > 1e-9)
          throw std::invalid_argument(
              "precomputed kernel matrix is asymmetric at (" + std::to_string(i) +
              "," + std::to_string(j) + ")");
      }
    }
    KernelSpec spec(Kind::precomputed);
    spec.matrix_ = std::move(raw_kernel);
    return spec;
  }

  Kind kind() const { return kind_; }
  int degree() const { return degree_; }
  double offset() const { return offset_; }
  double bandwidth() const { return bandwidth_; }
  const Matrix& matrix() const {
    if (kind_ != Kind::precomputed)
      throw std::logic_error("kernel spec has no stored matrix");
    return matrix_;
  }

 private:
  explicit KernelSpec(Kind kind) : kind_(kind) {}

  Kind kind_;
  int degree_ = 0;
  double offset_ = 0.0;
  double bandwidth_ = 0.0;
  Matrix matrix_;
};

/// K(u,v) for the analytic kernels. Precomputed kernels are defined only on
/// training indices and are rejected.
inline double evaluate_kernel(const KernelSpec& spec, const Vector& u,
                              const Vector& v) {
  if (spec.kind() == KernelSpec::Kind::precomputed)
    throw std::invalid_argument(
        "precomputed kernel cannot be evaluated at arbitrary points");
  if (u.size() != v.size())
    throw std::invalid_argument("kernel arguments must have matching dimension");
  switch (spec.kind()) {
    case KernelSpec::Kind::linear:
      return u.dot(v);
    case KernelSpec::Kind::polynomial:
      return std::pow(u.dot(v) + spec.offset(), spec.degree());
    case KernelSpec::Kind::rbf: {
      const double d2 = (u - v).squaredNorm();
      return std::exp(-d2 / (2.0 * spec.bandwidth() * spec.bandwidth()));
    }
    default:
      throw std::logic_error("unreachable kernel kind");
  }
}

}  // namespace ksep
