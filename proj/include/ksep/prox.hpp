// Smoothing prox-functions over the simplex and the smoothed argmin.
//
// Both prox choices are 1-strongly convex with respect to their reference
// norm (entropy: l1, squared-Euclidean: l2), and the reference norm dominates
// the G-norm as ||p||_G^2 <= lambda_sharp * ||p||_#^2 with lambda_sharp = 1
// for entropy and n for squared-Euclidean. The canonical starting smoothing
// level is mu_0 = 2 * lambda_sharp.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ksep/simplex.hpp"
#include "ksep/types.hpp"

namespace ksep {

class ProxFunction {
 public:
  enum class Kind { entropy, euclidean };

  /// d(p) = sum_i p_i log p_i + log n, centered at the uniform distribution.
  static ProxFunction entropy(Index n) {
    return ProxFunction(Kind::entropy, SimplexVector::uniform(n), 1.0);
  }

  /// d_q(p) = 1/2 ||p - q||_2^2, centered at q.
  static ProxFunction euclidean(SimplexVector center) {
    const double n = static_cast<double>(center.size());
    return ProxFunction(Kind::euclidean, std::move(center), n);
  }

  Kind kind() const { return kind_; }
  Index size() const { return center_.size(); }
  double lambda_sharp() const { return lambda_sharp_; }
  /// Canonical starting smoothing level, 2 * lambda_sharp.
  double mu0() const { return 2.0 * lambda_sharp_; }
  const SimplexVector& center() const { return center_; }

 private:
  ProxFunction(Kind kind, SimplexVector center, double lambda_sharp)
      : kind_(kind), center_(std::move(center)), lambda_sharp_(lambda_sharp) {}

  Kind kind_;
  SimplexVector center_;
  double lambda_sharp_;
};

/// d(p) >= 0, zero at the prox center. Entropy uses 0*log(0) = 0 and is
/// evaluated as sum_i p_i log(n p_i) for accuracy near the center.
inline double prox_value(const ProxFunction& prox, const SimplexVector& p) {
  if (p.size() != prox.size())
    throw std::invalid_argument("prox_value: vector size does not match prox");
  if (prox.kind() == ProxFunction::Kind::euclidean)
    return 0.5 * (p.vec() - prox.center().vec()).squaredNorm();
  const double n = static_cast<double>(p.size());
  double value = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) value += p[i] * std::log(n * p[i]);
  }
  return value > 0.0 ? value : 0.0;
}

/// argmin_p { <g_alpha, p> + mu * d(p) } over the simplex.
///
/// Entropy: the softmax exp(-g_alpha/mu), computed with max-subtraction so
/// small mu cannot overflow. Squared-Euclidean: the exact projection of
/// center - g_alpha/mu onto the simplex.
inline SimplexVector smoothed_argmin(const ProxFunction& prox,
                                     const Vector& g_alpha, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("smoothed_argmin: mu must be finite and > 0");
  if (g_alpha.size() != prox.size())
    throw std::invalid_argument("smoothed_argmin: size does not match prox");
  if (!g_alpha.allFinite())
    throw std::invalid_argument("smoothed_argmin: non-finite input");
  if (prox.kind() == ProxFunction::Kind::euclidean)
    return project_simplex(prox.center().vec() - g_alpha / mu);
  const Vector z = -g_alpha / mu;
  const double top = z.maxCoeff();
  return SimplexVector::renormalized((z.array() - top).exp().matrix());
}

}  // namespace ksep
