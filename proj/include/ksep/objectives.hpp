// Loss functions, margin bounds and certificate predicates.
//
// L(alpha) = max_i(-(G alpha)_i) + 1/2 ||alpha||_G^2. A strictly negative
// loss certifies feasibility: L(alpha) < 0 implies G alpha > 0, and a perfect
// classifier exists iff some alpha has G alpha > 0. The smoothed variant
// L_mu replaces the max with its prox-regularized version, evaluated at the
// exact maximizer returned by smoothed_argmin.
#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <variant>

#include "ksep/gram.hpp"
#include "ksep/prox.hpp"
#include "ksep/simplex.hpp"
#include "ksep/types.hpp"

namespace ksep {

inline double loss(const GramMatrix& g, const CoefficientVector& alpha) {
  detail::check_gram_dim(g, alpha, "loss");
  const Vector decisions = g.matrix() * alpha;
  return -decisions.minCoeff() + 0.5 * alpha.dot(decisions);
}

/// L_mu(alpha) for the given prox; the inner maximizer is p_mu(alpha).
inline double smoothed_loss(const GramMatrix& g, const ProxFunction& prox,
                            const CoefficientVector& alpha, double mu) {
  detail::check_gram_dim(g, alpha, "smoothed_loss");
  if (prox.size() != g.size())
    throw std::invalid_argument("smoothed_loss: prox size does not match Gram");
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("smoothed_loss: mu must be finite and > 0");
  const Vector decisions = g.matrix() * alpha;
  const SimplexVector p = smoothed_argmin(prox, decisions, mu);
  return 0.5 * alpha.dot(decisions) - decisions.dot(p.vec()) -
         mu * prox_value(prox, p);
}

/// ||p||_G for p in the simplex: an upper bound on the margin rho_K when the
/// instance is feasible, and a near-infeasibility score when small.
inline double margin_lower_bound(const GramMatrix& g, const SimplexVector& p) {
  return g_norm(g, p.vec());
}

/// A checked certificate: either a strict separator (G v > 0) or an
/// epsilon-approximate dual witness (v in the simplex with ||v||_G <= eps).
struct CertificateVerdict {
  enum class Kind { primal_feasible, dual_epsilon };
  Kind kind;
  double min_decision;  // min_i (G v)_i
  double g_norm;        // ||v||_G
  Vector vector;
};

/// Which predicate missed and by how much; returned as a value, not thrown.
struct CertificateFailure {
  double min_decision;
  double g_norm;
  double simplex_min_entry;
  double simplex_sum_error;
  std::string reason;
};

using CertificateCheck = std::variant<CertificateVerdict, CertificateFailure>;

/// Primal is checked before dual: a vector can satisfy both predicates when
/// epsilon is loose, and a strict separator is the stronger statement.
/// "G v > 0" is a strict comparison against exactly 0.0; no tolerance.
inline CertificateCheck check_certificate(const GramMatrix& g,
                                          const Vector& vector, double epsilon) {
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("check_certificate: epsilon must be >= 0");
  detail::check_gram_dim(g, vector, "check_certificate");
  const Vector decisions = g.matrix() * vector;
  const double min_decision = decisions.minCoeff();
  const double quad = vector.dot(decisions);
  const double gn = std::sqrt(quad > 0.0 ? quad : 0.0);
  if (vector.allFinite() && min_decision > 0.0)
    return CertificateVerdict{CertificateVerdict::Kind::primal_feasible,
                              min_decision, gn, vector};
  const double min_entry = vector.allFinite() ? vector.minCoeff() : -1.0;
  const double sum_error = vector.allFinite() ? std::abs(vector.sum() - 1.0) : 1.0;
  const bool in_simplex =
      vector.allFinite() && min_entry >= 0.0 && sum_error <= 1e-12;
  if (in_simplex && gn <= epsilon)
    return CertificateVerdict{CertificateVerdict::Kind::dual_epsilon,
                              min_decision, gn, vector};
  std::ostringstream reason;
  reason << "primal check failed: min decision value " << min_decision
         << " is not > 0";
  if (!in_simplex) {
    reason << "; dual check failed: vector is not in the simplex (min entry "
           << min_entry << ", sum deviation " << sum_error << ")";
  } else {
    reason << "; dual check failed: G-norm " << gn << " exceeds epsilon "
           << epsilon << " by " << (gn - epsilon);
  }
  return CertificateFailure{min_decision, gn, min_entry, sum_error, reason.str()};
}

}  // namespace ksep
