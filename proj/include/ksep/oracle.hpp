// Slow, independent reference implementations used to validate the fast
// paths: the exact minimum-G-norm point over the simplex on tiny instances,
// a long-horizon conditional-gradient fallback certified by its duality gap,
// active-set enumeration for the simplex projection, and an exact 2-D
// feasibility verdict by angular sweep. Nothing here shares code with the
// solvers it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ksep/dataset.hpp"
#include "ksep/gram.hpp"
#include "ksep/simplex.hpp"
#include "ksep/types.hpp"

namespace ksep {

struct OracleReport {
  bool feasible;
  /// min over the simplex of ||p||_G; equals rho_K for feasible instances.
  double margin_estimate;
  SimplexVector minimizer;
  long iterations;
};

namespace detail {

/// Exact minimizer of p^T G p over the simplex for n <= 3: vertices, the
/// closed-form edge midpoints (unit diagonal puts every edge minimum at 1/2),
/// and for n = 3 the interior stationary point of the full face.
inline std::pair<Vector, double> min_quadratic_small(const Matrix& g) {
  const Index n = g.rows();
  Vector best = Vector::Zero(n);
  best[0] = 1.0;
  double best_value = g(0, 0);
  const auto consider = [&](const Vector& p) {
    const double value = p.dot(g * p);
    if (value < best_value) {
      best_value = value;
      best = p;
    }
  };
  for (Index i = 1; i < n; ++i) {
    Vector p = Vector::Zero(n);
    p[i] = 1.0;
    consider(p);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      Vector p = Vector::Zero(n);
      p[i] = 0.5;
      p[j] = 0.5;
      consider(p);
    }
  }
  if (n == 3) {
    // Stationary point of p = (t1, t2, 1 - t1 - t2): (Gp)_1 = (Gp)_2 = (Gp)_3.
    Eigen::Matrix2d a;
    Eigen::Vector2d b;
    a(0, 0) = g(0, 0) - g(0, 2) - g(2, 0) + g(2, 2);
    a(0, 1) = g(0, 1) - g(0, 2) - g(2, 1) + g(2, 2);
    a(1, 0) = g(1, 0) - g(1, 2) - g(2, 0) + g(2, 2);
    a(1, 1) = g(1, 1) - g(1, 2) - g(2, 1) + g(2, 2);
    b[0] = g(2, 2) - g(0, 2);
    b[1] = g(2, 2) - g(1, 2);
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (std::abs(det) > 1e-14) {
      const double t1 = (b[0] * a(1, 1) - b[1] * a(0, 1)) / det;
      const double t2 = (a(0, 0) * b[1] - a(1, 0) * b[0]) / det;
      if (t1 >= 0.0 && t2 >= 0.0 && t1 + t2 <= 1.0) {
        Vector p(3);
        p << t1, t2, 1.0 - t1 - t2;
        consider(p);
      }
    }
  }
  return {best, best_value};
}

}  // namespace detail

/// Reference minimum of ||p||_G over the simplex. Exact enumeration for
/// n <= 3; otherwise conditional gradient with exact line search, run for up
/// to 10^6 iterations and certified by the Frank-Wolfe duality gap falling
/// below tolerance^2 (iterations == 10^6 in the report means the gap
/// certificate was not reached). feasible = (margin_estimate > tolerance).
inline OracleReport reference_min_gnorm(const GramMatrix& gram,
                                        double tolerance) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw std::invalid_argument("reference_min_gnorm: tolerance must be > 0");
  const Index n = gram.size();
  const Matrix& m = gram.matrix();

  if (n <= 3) {
    auto [p, value] = detail::min_quadratic_small(m);
    const double margin = std::sqrt(value > 0.0 ? value : 0.0);
    return OracleReport{margin > tolerance, margin,
                        SimplexVector::renormalized(std::move(p)), 0};
  }

  constexpr long kMaxIterations = 1'000'000;
  Vector p = SimplexVector::uniform(n).vec();
  Vector g_p = m * p;
  double p_quad = p.dot(g_p);
  long it = 0;
  for (; it < kMaxIterations; ++it) {
    if (it > 0 && it % 10000 == 0) {
      g_p = m * p;
      p_quad = p.dot(g_p);
    }
    Index j = 0;
    const double low = g_p.minCoeff(&j);
    const double gap = 2.0 * (p_quad - low);
    if (gap <= tolerance * tolerance) break;
    const double denom = p_quad - 2.0 * low + 1.0;
    const double lambda =
        denom > 0.0 ? std::clamp((p_quad - low) / denom, 0.0, 1.0) : 0.0;
    if (lambda == 0.0) break;
    p_quad = (1.0 - lambda) * (1.0 - lambda) * p_quad +
             2.0 * lambda * (1.0 - lambda) * low + lambda * lambda;
    p *= (1.0 - lambda);
    p[j] += lambda;
    g_p = (1.0 - lambda) * g_p + lambda * m.col(j);
  }
  SimplexVector minimizer = SimplexVector::renormalized(std::move(p));
  const double quad = minimizer.vec().dot(m * minimizer.vec());
  const double margin = std::sqrt(quad > 0.0 ? quad : 0.0);
  return OracleReport{margin > tolerance, margin, std::move(minimizer), it};
}

/// Exact Euclidean projection onto the simplex by enumerating all 2^n - 1
/// active sets and keeping the closest feasible candidate. n <= 12 only.
inline SimplexVector brute_projection(const Vector& v) {
  const Index n = v.size();
  if (n < 1) throw std::invalid_argument("brute_projection: empty input");
  if (n > 12)
    throw std::invalid_argument(
        "brute_projection supports n <= 12 (got n = " + std::to_string(n) + ")");
  if (!v.allFinite())
    throw std::invalid_argument("brute_projection: non-finite input");
  double best_dist = std::numeric_limits<double>::infinity();
  Vector best;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double sum = 0.0;
    int count = 0;
    for (Index i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        sum += v[i];
        ++count;
      }
    }
    const double tau = (sum - 1.0) / count;
    Vector p = Vector::Zero(n);
    bool valid = true;
    for (Index i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        const double value = v[i] - tau;
        if (value < -1e-12) {
          valid = false;
          break;
        }
        p[i] = value > 0.0 ? value : 0.0;
      }
    }
    if (!valid) continue;
    const double dist = (p - v).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = std::move(p);
    }
  }
  return SimplexVector::renormalized(std::move(best));
}

/// Exact strict-separability verdict for 2-D data under linear-kernel
/// semantics: a strict separator exists iff all signed normalized points
/// y_i x_i/||x_i|| fit inside an open semicircle, i.e. the largest angular
/// gap exceeds pi. Gaps within 1e-9 of pi resolve to infeasible.
inline bool exact_feasibility_2d(const LabeledDataset& data) {
  if (data.dim() != 2)
    throw std::invalid_argument("exact_feasibility_2d requires 2-D data");
  const Index n = data.size();
  std::vector<double> angles;
  angles.reserve(n);
  for (Index i = 0; i < n; ++i) {
    const Vector x = data.point(i);
    if (!(x.norm() > 0.0))
      throw std::invalid_argument(
          "degenerate point: zero norm cannot be normalized (index " +
          std::to_string(i) + ")");
    angles.push_back(std::atan2(data.label(i) * x[1], data.label(i) * x[0]));
  }
  std::sort(angles.begin(), angles.end());
  const double two_pi = 2.0 * M_PI;
  double max_gap = angles.front() + two_pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i)
    max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  return max_gap > M_PI + 1e-9;
}

}  // namespace ksep
