// Seeded synthetic instances for the bench command and for reproducible
// tests. The generator is a self-contained splitmix64 stream so identical
// seeds produce identical datasets on every platform.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ksep/dataset.hpp"
#include "ksep/types.hpp"

namespace ksep::synthetic {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform direction on the unit sphere in R^d (rejection from the cube).
  Vector unit_vector(Index d) {
    while (true) {
      Vector v(d);
      for (Index i = 0; i < d; ++i) v[i] = uniform(-1.0, 1.0);
      const double norm = v.norm();
      if (norm > 1e-3 && norm <= 1.0) return v / norm;
    }
  }

 private:
  std::uint64_t state_;
};

/// Separable instance: a hidden unit direction w*, points drawn on the unit
/// sphere with |<w*, x>| >= margin (rejection sampled), labeled by the side
/// they fall on and scaled by a random radius in [0.5, 2]. The normalized
/// margin rho of the produced instance is at least `margin`.
inline LabeledDataset planted_margin(std::uint64_t seed, Index n, Index d,
                                     double margin) {
  if (n < 1 || d < 1) throw std::invalid_argument("planted_margin: bad size");
  if (!(margin > 0.0 && margin < 1.0))
    throw std::invalid_argument("planted_margin: margin must be in (0,1)");
  SplitMix64 rng(seed);
  const Vector w = rng.unit_vector(d);
  Matrix points(n, d);
  Vector labels(n);
  for (Index i = 0; i < n; ++i) {
    Vector x = rng.unit_vector(d);
    while (std::abs(w.dot(x)) < margin) x = rng.unit_vector(d);
    labels[i] = w.dot(x) > 0.0 ? 1.0 : -1.0;
    points.row(i) = (rng.uniform(0.5, 2.0) * x).transpose();
  }
  return LabeledDataset(std::move(points), std::move(labels));
}

/// Hard separable family in 2-D: one signed direction against a tight
/// opposing cluster of n-1 points at angular distance pi - phi, with
/// phi = 2 asin(rho). The span of the signed directions stays just under pi,
/// so the instance is feasible with normalized margin close to rho, while the
/// uniform coefficient vector badly misclassifies the lone point. Labels and
/// radii are randomized; the signed normalized geometry is fixed by rho.
inline LabeledDataset lopsided_two_cluster(std::uint64_t seed, Index n,
                                           double rho) {
  if (n < 2) throw std::invalid_argument("lopsided_two_cluster: n must be >= 2");
  if (!(rho > 0.0 && rho < 0.5))
    throw std::invalid_argument("lopsided_two_cluster: rho must be in (0, 0.5)");
  SplitMix64 rng(seed);
  const double phi = 2.0 * std::asin(rho);
  const double base = rng.uniform(0.0, 2.0 * M_PI);
  Matrix points(n, 2);
  Vector labels(n);
  for (Index i = 0; i < n; ++i) {
    double angle = base;
    if (i > 0) {
      // cluster within [pi - phi, pi - phi/2] of the lone direction
      angle = base + M_PI - phi + rng.uniform(0.0, phi / 2.0);
    }
    const double label = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double radius = rng.uniform(0.5, 2.0);
    // x = y * z so that the signed direction y * x/||x|| equals z
    points(i, 0) = label * radius * std::cos(angle);
    points(i, 1) = label * radius * std::sin(angle);
    labels[i] = label;
  }
  return LabeledDataset(std::move(points), std::move(labels));
}

/// Robustly infeasible 2-D instance: three anchor directions 120 degrees
/// apart plus n-3 random ones, so the origin sits well inside the convex hull
/// of the signed normalized points. Labels and radii are randomized.
inline LabeledDataset infeasible_spread(std::uint64_t seed, Index n) {
  if (n < 3) throw std::invalid_argument("infeasible_spread: n must be >= 3");
  SplitMix64 rng(seed);
  const double base = rng.uniform(0.0, 2.0 * M_PI);
  Matrix points(n, 2);
  Vector labels(n);
  for (Index i = 0; i < n; ++i) {
    const double angle = i < 3 ? base + i * (2.0 * M_PI / 3.0)
                               : rng.uniform(0.0, 2.0 * M_PI);
    const double label = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double radius = rng.uniform(0.5, 2.0);
    points(i, 0) = label * radius * std::cos(angle);
    points(i, 1) = label * radius * std::sin(angle);
    labels[i] = label;
  }
  return LabeledDataset(std::move(points), std::move(labels));
}

/// Unfiltered random 2-D instance (may be feasible or not).
inline LabeledDataset random_2d(std::uint64_t seed, Index n) {
  if (n < 1) throw std::invalid_argument("random_2d: n must be >= 1");
  SplitMix64 rng(seed);
  Matrix points(n, 2);
  Vector labels(n);
  for (Index i = 0; i < n; ++i) {
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const double radius = rng.uniform(0.5, 2.0);
    points(i, 0) = radius * std::cos(angle);
    points(i, 1) = radius * std::sin(angle);
    labels[i] = rng.uniform() < 0.5 ? 1.0 : -1.0;
  }
  return LabeledDataset(std::move(points), std::move(labels));
}

}  // namespace ksep::synthetic
