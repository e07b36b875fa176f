// The solver family: perceptron and normalized perceptron on raw features,
// and the kernelized solvers (NKP, SNKP, NVN, SNKPVN, ISNKPVN) on the
// normalized signed Gram matrix.
//
// All solvers are deterministic iterative state machines sharing one trace
// and termination harness. Exit checks run at the top of each loop iteration,
// before the update, so iterations_used counts updates performed. Decision
// vectors G*alpha and G*p are maintained incrementally through the affine
// recurrences of each algorithm with exactly one fresh mat-vec per iteration,
// and are recomputed from scratch every 1000 iterations to cap drift. An exit
// condition observed on a maintained vector is re-verified against a fresh
// mat-vec before the certificate is accepted.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ksep/gram.hpp"
#include "ksep/prox.hpp"
#include "ksep/simplex.hpp"
#include "ksep/types.hpp"

namespace ksep {

struct SolverConfig {
  long max_iterations = 1'000'000;
  double dual_epsilon = 1e-6;  // dual certificate accuracy (nvn, isnkpvn)
  double gamma = 2.0;          // isnkpvn outer shrink factor, > 1
  long trace_every = 0;        // 0 = no trace, else record every k-th iteration
};

/// Snapshot of the solver state at the top of iteration k, before the update.
/// For the smoothed solvers mu follows mu_k = 4 lambda_sharp / ((k+1)(k+2));
/// the non-smoothed solvers record mu = 0 and smoothed_loss_value equal to
/// loss_value. The linear baselines record the same quantities measured on
/// their own feature space (raw for perceptron, l2-normalized for the
/// normalized perceptron).
struct IterationRecord {
  long k = 0;
  double mu = 0.0;
  double loss_value = 0.0;
  double smoothed_loss_value = 0.0;
  double p_gnorm = 0.0;
  double min_decision = 0.0;
};

struct SolveOutcome {
  enum class Kind { primal, dual, limit };
  Kind kind = Kind::limit;
  /// Final coefficient iterate; the primal certificate when kind == primal.
  CoefficientVector alpha;
  /// Set when kind == dual: p in the simplex with ||p||_G below the exit
  /// threshold, together with its freshly computed G-norm.
  std::optional<SimplexVector> dual_certificate;
  double dual_gnorm = 0.0;
  /// Final-state snapshot when kind == limit.
  std::optional<IterationRecord> last;
  long iterations_used = 0;
  std::vector<IterationRecord> trace;
};

namespace detail {

inline void validate_config(const SolverConfig& config) {
  if (config.max_iterations < 1)
    throw std::invalid_argument("solver config: max_iterations must be >= 1");
  if (!(config.gamma > 1.0))
    throw std::invalid_argument("solver config: gamma must be > 1");
  if (!(config.dual_epsilon >= 0.0))
    throw std::invalid_argument("solver config: dual_epsilon must be >= 0");
  if (config.trace_every < 0)
    throw std::invalid_argument("solver config: trace_every must be >= 0");
}

inline bool should_trace(const SolverConfig& config, long global_k) {
  return config.trace_every > 0 && global_k % config.trace_every == 0;
}

}  // namespace detail

// --- Iteration bounds -------------------------------------------------------
//
// Worst-case update counts for feasible instances with margin rho > 0, or for
// the requested dual accuracy. Useful for sizing max_iterations when a margin
// estimate is available.

inline long iteration_bound_nkp(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("iteration bound needs rho > 0");
  return static_cast<long>(std::ceil(1.0 / (rho * rho)));
}

inline long iteration_bound_snkp(Index n, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("iteration bound needs rho > 0");
  return static_cast<long>(
      std::ceil(2.0 * std::sqrt(2.0 * std::log(static_cast<double>(n))) / rho));
}

inline long iteration_bound_nvn(double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("iteration bound needs epsilon > 0");
  return static_cast<long>(std::ceil(1.0 / (epsilon * epsilon)));
}

inline long iteration_bound_snkpvn_feasible(Index n, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("iteration bound needs rho > 0");
  return static_cast<long>(
      std::ceil(2.0 * std::sqrt(2.0 * static_cast<double>(n)) / rho));
}

/// Total inner iterations over all outer rounds until delta_t drops below rho.
inline long iteration_bound_isnkpvn_feasible(Index n, double rho, double gamma) {
  if (!(rho > 0.0)) throw std::invalid_argument("iteration bound needs rho > 0");
  if (!(gamma > 1.0)) throw std::invalid_argument("iteration bound needs gamma > 1");
  const double outer =
      std::max(std::log(1.0 / rho), 0.0) / std::log(gamma) + 1.0;
  const double per_call = 2.0 * std::sqrt(2.0 * static_cast<double>(n)) / rho;
  return static_cast<long>(std::ceil(per_call * outer));
}

/// The epsilon branch of the dual bound, sqrt(n)/epsilon * log(1/epsilon).
inline long iteration_bound_isnkpvn_dual(Index n, double epsilon) {
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("iteration bound needs 0 < epsilon < 1");
  return static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n)) / epsilon *
                                     std::log(1.0 / epsilon)));
}

// --- Linear baselines -------------------------------------------------------

/// Classical perceptron on raw features: w += y_i x_i on the misclassified
/// point with the smallest index (y_i w^T x_i <= 0). Returns the update
/// counts per example as the coefficient vector, so w = sum_i alpha_i y_i x_i.
/// Halts within max_i ||x_i||^2 / rho^2 updates when the instance is
/// separable with unnormalized margin rho.
inline SolveOutcome perceptron(const LabeledDataset& data,
                               const SolverConfig& config) {
  detail::validate_config(config);
  const Index n = data.size();
  const Matrix& points = data.points();
  const Vector& y = data.labels();
  Vector w = Vector::Zero(data.dim());
  Vector counts = Vector::Zero(n);

  SolveOutcome out;
  const auto make_record = [&](long k, const Vector& margins) {
    IterationRecord rec;
    rec.k = k;
    rec.mu = 0.0;
    rec.min_decision = margins.minCoeff();
    rec.loss_value = -rec.min_decision + 0.5 * w.squaredNorm();
    rec.smoothed_loss_value = rec.loss_value;
    const SimplexVector p = worst_case_distribution(margins);
    rec.p_gnorm = (points.transpose() * p.vec().cwiseProduct(y)).norm();
    return rec;
  };

  for (long k = 0;; ++k) {
    const Vector margins = y.cwiseProduct(points * w);
    Index miss = -1;
    for (Index i = 0; i < n; ++i) {
      if (margins[i] <= 0.0) {
        miss = i;
        break;
      }
    }
    if (miss < 0) {
      out.kind = SolveOutcome::Kind::primal;
      out.alpha = counts;
      out.iterations_used = k;
      return out;
    }
    if (k >= config.max_iterations) {
      out.kind = SolveOutcome::Kind::limit;
      out.alpha = counts;
      out.last = make_record(k, margins);
      out.iterations_used = k;
      return out;
    }
    if (detail::should_trace(config, k)) out.trace.push_back(make_record(k, margins));
    w += y[miss] * points.row(miss).transpose();
    counts[miss] += 1.0;
  }
}

/// Normalized perceptron on l2-normalized features:
/// w_{k+1} = (1-theta_k) w_k + theta_k * sum_i p(w_k)_i y_i x_i/||x_i||,
/// theta_k = 1/(k+1). The returned coefficient vector is the convex weight
/// history, a simplex vector once any update has run. Halts within
/// ceil(1/rho_2^2) updates when the normalized margin rho_2 is positive.
inline SolveOutcome normalized_perceptron(const LabeledDataset& data,
                                          const SolverConfig& config) {
  detail::validate_config(config);
  const Index n = data.size();
  Matrix unit_points = data.points();
  for (Index i = 0; i < n; ++i) {
    const double norm = unit_points.row(i).norm();
    if (!(norm > 0.0))
      throw std::invalid_argument(
          "degenerate point: zero norm cannot be l2-normalized (index " +
          std::to_string(i) + ")");
    unit_points.row(i) /= norm;
  }
  const Vector& y = data.labels();
  Vector w = Vector::Zero(data.dim());
  Vector weights = Vector::Zero(n);

  SolveOutcome out;
  const auto make_record = [&](long k, const Vector& margins) {
    IterationRecord rec;
    rec.k = k;
    rec.mu = 0.0;
    rec.min_decision = margins.minCoeff();
    rec.loss_value = -rec.min_decision + 0.5 * w.squaredNorm();
    rec.smoothed_loss_value = rec.loss_value;
    const SimplexVector p = worst_case_distribution(margins);
    rec.p_gnorm = (unit_points.transpose() * p.vec().cwiseProduct(y)).norm();
    return rec;
  };

  for (long k = 0;; ++k) {
    const Vector margins = y.cwiseProduct(unit_points * w);
    if (margins.minCoeff() > 0.0) {
      out.kind = SolveOutcome::Kind::primal;
      out.alpha = weights;
      out.iterations_used = k;
      return out;
    }
    if (k >= config.max_iterations) {
      out.kind = SolveOutcome::Kind::limit;
      out.alpha = weights;
      out.last = make_record(k, margins);
      out.iterations_used = k;
      return out;
    }
    if (detail::should_trace(config, k)) out.trace.push_back(make_record(k, margins));
    const SimplexVector p = worst_case_distribution(margins);
    const double theta = 1.0 / static_cast<double>(k + 1);
    w = (1.0 - theta) * w +
        theta * (unit_points.transpose() * p.vec().cwiseProduct(y));
    weights = (1.0 - theta) * weights + theta * p.vec();
  }
}

// --- Normalized kernel perceptron -------------------------------------------

/// Subgradient descent on L(alpha): alpha_{k+1} = (1-theta_k) alpha_k +
/// theta_k p(alpha_k) with theta_k = 1/(k+1), starting from alpha_0 = 0 and
/// exiting once G alpha_k > 0. Every iterate past the first is a probability
/// distribution. Finds a separator within ceil(1/rho_K^2) updates when the
/// margin rho_K is positive; infeasible instances run to the iteration limit.
inline SolveOutcome nkp(const GramMatrix& g, const SolverConfig& config) {
  detail::validate_config(config);
  const Index n = g.size();
  const Matrix& m = g.matrix();
  Vector alpha = Vector::Zero(n);
  Vector g_alpha = Vector::Zero(n);
  double alpha_quad = 0.0;

  SolveOutcome out;
  const auto make_record = [&](long k, const SimplexVector& p, const Vector& g_p) {
    IterationRecord rec;
    rec.k = k;
    rec.mu = 0.0;
    rec.min_decision = g_alpha.minCoeff();
    rec.loss_value = -rec.min_decision + 0.5 * alpha_quad;
    rec.smoothed_loss_value = rec.loss_value;
    const double quad = p.vec().dot(g_p);
    rec.p_gnorm = std::sqrt(quad > 0.0 ? quad : 0.0);
    return rec;
  };

  for (long k = 0;; ++k) {
    if (k > 0 && k % 1000 == 0) {
      g_alpha = m * alpha;
      alpha_quad = alpha.dot(g_alpha);
    }
    if (g_alpha.minCoeff() > 0.0) {
      const Vector fresh = m * alpha;
      if (fresh.minCoeff() > 0.0) {
        out.kind = SolveOutcome::Kind::primal;
        out.alpha = alpha;
        out.iterations_used = k;
        return out;
      }
      g_alpha = fresh;
      alpha_quad = alpha.dot(g_alpha);
    }
    const SimplexVector p = worst_case_distribution(g_alpha);
    const Vector g_p = m * p.vec();
    if (k >= config.max_iterations) {
      out.kind = SolveOutcome::Kind::limit;
      out.alpha = alpha;
      out.last = make_record(k, p, g_p);
      out.iterations_used = k;
      return out;
    }
    if (detail::should_trace(config, k)) out.trace.push_back(make_record(k, p, g_p));
    const double theta = 1.0 / static_cast<double>(k + 1);
    alpha = (1.0 - theta) * alpha + theta * p.vec();
    g_alpha = (1.0 - theta) * g_alpha + theta * g_p;
    alpha_quad = alpha.dot(g_alpha);
  }
}

// --- Smoothed solvers --------------------------------------------------------

namespace detail {

/// Shared core of SNKP (entropy prox, no dual exit) and SNKPVN (squared-
/// Euclidean prox centered at q, dual exit at ||p_k||_G < delta).
///
///   alpha_0 = prox center, mu_0 = 2 lambda_sharp, p_0 = p_{mu_0}(alpha_0)
///   theta_k = 2/(k+3)
///   alpha_{k+1} = (1-theta_k)(alpha_k + theta_k p_k) + theta_k^2 p_{mu_k}(alpha_k)
///   mu_{k+1}    = (1-theta_k) mu_k
///   p_{k+1}     = (1-theta_k) p_k + theta_k p_{mu_{k+1}}(alpha_{k+1})
///
/// The recurrences keep the excessive-gap inequality
/// L_mu(alpha_k) <= -1/2 ||p_k||_G^2 invariant for both prox settings.
/// p_{mu_{k+1}}(alpha_{k+1}) computed at the end of iteration k is reused at
/// iteration k+1, so each iteration costs a single fresh mat-vec.
///
/// dual_exit_delta < 0 disables the dual exit. A p_k with exactly zero G-norm
/// is an exact witness and is returned even when delta is zero, which keeps
/// the iterated (outer) scheme from stalling once a witness has been found.
inline SolveOutcome smoothed_run(const GramMatrix& g, const ProxFunction& prox,
                                 const SolverConfig& config,
                                 double dual_exit_delta, long k_offset) {
  const Matrix& m = g.matrix();
  double mu = prox.mu0();

  Vector alpha = prox.center().vec();
  Vector g_alpha = m * alpha;
  double alpha_quad = alpha.dot(g_alpha);

  SimplexVector p_mu_now = smoothed_argmin(prox, g_alpha, mu);
  Vector g_p_mu = m * p_mu_now.vec();
  Vector p = p_mu_now.vec();
  Vector g_p = g_p_mu;
  double p_quad = p.dot(g_p);

  SolveOutcome out;
  const auto make_record = [&](long global_k) {
    IterationRecord rec;
    rec.k = global_k;
    rec.mu = mu;
    rec.min_decision = g_alpha.minCoeff();
    rec.loss_value = -rec.min_decision + 0.5 * alpha_quad;
    rec.smoothed_loss_value = 0.5 * alpha_quad - g_alpha.dot(p_mu_now.vec()) -
                              mu * prox_value(prox, p_mu_now);
    rec.p_gnorm = std::sqrt(p_quad > 0.0 ? p_quad : 0.0);
    return rec;
  };

  for (long k = 0;; ++k) {
    if (k > 0 && k % 1000 == 0) {
      g_alpha = m * alpha;
      alpha_quad = alpha.dot(g_alpha);
      g_p = m * p;
      p_quad = p.dot(g_p);
      g_p_mu = m * p_mu_now.vec();
    }
    if (g_alpha.minCoeff() > 0.0) {
      const Vector fresh = m * alpha;
      if (fresh.minCoeff() > 0.0) {
        out.kind = SolveOutcome::Kind::primal;
        out.alpha = alpha;
        out.iterations_used = k;
        return out;
      }
      g_alpha = fresh;
      alpha_quad = alpha.dot(g_alpha);
    }
    if (dual_exit_delta >= 0.0) {
      const double p_gn = std::sqrt(p_quad > 0.0 ? p_quad : 0.0);
      if (p_gn < dual_exit_delta || p_gn == 0.0) {
        const Vector fresh = m * p;
        const double fresh_quad = p.dot(fresh);
        const double fresh_gn = std::sqrt(fresh_quad > 0.0 ? fresh_quad : 0.0);
        if (fresh_gn < dual_exit_delta || fresh_gn == 0.0) {
          SimplexVector certificate = SimplexVector::renormalized(p);
          out.kind = SolveOutcome::Kind::dual;
          out.dual_gnorm = g_norm(g, certificate.vec());
          out.dual_certificate = std::move(certificate);
          out.alpha = alpha;
          out.iterations_used = k;
          return out;
        }
        g_p = fresh;
        p_quad = fresh_quad;
      }
    }
    if (k >= config.max_iterations) {
      out.kind = SolveOutcome::Kind::limit;
      out.alpha = alpha;
      out.last = make_record(k_offset + k);
      out.iterations_used = k;
      return out;
    }
    if (detail::should_trace(config, k_offset + k))
      out.trace.push_back(make_record(k_offset + k));

    const double theta = 2.0 / static_cast<double>(k + 3);
    alpha = (1.0 - theta) * (alpha + theta * p) + theta * theta * p_mu_now.vec();
    g_alpha = (1.0 - theta) * (g_alpha + theta * g_p) + theta * theta * g_p_mu;
    mu = (1.0 - theta) * mu;
    p_mu_now = smoothed_argmin(prox, g_alpha, mu);
    g_p_mu = m * p_mu_now.vec();  // the one fresh mat-vec of this iteration
    p_quad = (1.0 - theta) * (1.0 - theta) * p_quad +
             2.0 * theta * (1.0 - theta) * p.dot(g_p_mu) +
             theta * theta * p_mu_now.vec().dot(g_p_mu);
    p = (1.0 - theta) * p + theta * p_mu_now.vec();
    g_p = (1.0 - theta) * g_p + theta * g_p_mu;
    alpha_quad = alpha.dot(g_alpha);
  }
}

}  // namespace detail

/// Smoothed normalized kernel perceptron: entropy prox, mu_0 = 2, alpha_0
/// uniform. Finds a separator within ceil(2 sqrt(2 log n)/rho_K) updates on
/// feasible instances; has no dual exit, so infeasible instances run to the
/// iteration limit while ||p_k||_G decays at rate O(1/k).
inline SolveOutcome snkp(const GramMatrix& g, const SolverConfig& config) {
  detail::validate_config(config);
  return detail::smoothed_run(g, ProxFunction::entropy(g.size()), config, -1.0, 0);
}

/// Normalized Von-Neumann, kernelized: the iterate is p_k in the simplex with
/// w_k = sum_i p_{k,i} y_i phi_i, all geometry through G. Each round moves
/// toward the most violated vertex e_j, j = argmin_i (G p_k)_i, with the
/// exact line search lambda* = clamp(<w, w - v>_G / ||w - v||_G^2, 0, 1)
/// (lambda* = 0 if ||w - v||_G = 0), so ||w_k||_G never increases. Returns a
/// dual certificate once ||p_k||_G <= dual_epsilon, within ceil(1/eps^2)
/// updates on infeasible instances; a primal certificate is returned first
/// if G p_k > 0 is detected.
inline SolveOutcome nvn(const GramMatrix& g, const SolverConfig& config) {
  detail::validate_config(config);
  const Index n = g.size();
  const Matrix& m = g.matrix();
  Vector p = SimplexVector::uniform(n).vec();
  Vector g_p = m * p;
  double p_quad = p.dot(g_p);

  SolveOutcome out;
  const auto make_record = [&](long k) {
    IterationRecord rec;
    rec.k = k;
    rec.mu = 0.0;
    rec.min_decision = g_p.minCoeff();
    rec.loss_value = -rec.min_decision + 0.5 * (p_quad > 0.0 ? p_quad : 0.0);
    rec.smoothed_loss_value = rec.loss_value;
    rec.p_gnorm = std::sqrt(p_quad > 0.0 ? p_quad : 0.0);
    return rec;
  };

  for (long k = 0;; ++k) {
    if (k > 0 && k % 1000 == 0) {
      g_p = m * p;
      p_quad = p.dot(g_p);
    }
    if (g_p.minCoeff() > 0.0) {
      const Vector fresh = m * p;
      if (fresh.minCoeff() > 0.0) {
        out.kind = SolveOutcome::Kind::primal;
        out.alpha = p;
        out.iterations_used = k;
        return out;
      }
      g_p = fresh;
      p_quad = p.dot(g_p);
    }
    if (std::sqrt(p_quad > 0.0 ? p_quad : 0.0) <= config.dual_epsilon) {
      const Vector fresh = m * p;
      const double fresh_quad = p.dot(fresh);
      const double fresh_gn = std::sqrt(fresh_quad > 0.0 ? fresh_quad : 0.0);
      if (fresh_gn <= config.dual_epsilon) {
        SimplexVector certificate = SimplexVector::renormalized(p);
        out.kind = SolveOutcome::Kind::dual;
        out.dual_gnorm = g_norm(g, certificate.vec());
        out.dual_certificate = std::move(certificate);
        out.alpha = p;
        out.iterations_used = k;
        return out;
      }
      g_p = fresh;
      p_quad = fresh_quad;
    }
    if (k >= config.max_iterations) {
      out.kind = SolveOutcome::Kind::limit;
      out.alpha = p;
      out.last = make_record(k);
      out.iterations_used = k;
      return out;
    }
    if (detail::should_trace(config, k)) out.trace.push_back(make_record(k));

    Index j = 0;
    g_p.minCoeff(&j);
    const double denom = p_quad - 2.0 * g_p[j] + 1.0;  // ||w - v_j||_G^2
    double lambda = 0.0;
    if (denom > 0.0)
      lambda = std::clamp((p_quad - g_p[j]) / denom, 0.0, 1.0);
    p_quad = (1.0 - lambda) * (1.0 - lambda) * p_quad +
             2.0 * lambda * (1.0 - lambda) * g_p[j] + lambda * lambda;
    p *= (1.0 - lambda);
    p[j] += lambda;
    g_p = (1.0 - lambda) * g_p + lambda * m.col(j);
  }
}

/// Smoothed normalized kernel perceptron-Von-Neumann: squared-Euclidean prox
/// centered at q, mu_0 = 2n, alpha_0 = q. Exits with a primal certificate on
/// G alpha_k > 0, or returns p_k once ||p_k||_G < delta (checked from k = 0
/// on, using p_0 = p_{mu_0}(alpha_0)). With rho_K > delta this finds a
/// separator within ceil(2 sqrt(2n)/rho_K) updates; otherwise it returns a
/// delta-solution within (2 sqrt(2n)/delta) min(sqrt 2, ||q||_G/|rho_K|)
/// updates.
inline SolveOutcome snkpvn(const GramMatrix& g, const SimplexVector& q,
                           double delta, const SolverConfig& config) {
  detail::validate_config(config);
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("snkpvn: delta must be finite and > 0");
  if (q.size() != g.size())
    throw std::invalid_argument("snkpvn: q size does not match Gram size");
  return detail::smoothed_run(g, ProxFunction::euclidean(q), config, delta, 0);
}

/// Iterated SNKPVN: q_0 uniform; each round runs SNKPVN(q_t, delta_t) with
/// delta_t = ||q_t||_G / gamma and feeds the returned p back in as q_{t+1},
/// halting with q_{t+1} as the dual certificate once delta_t < epsilon, or
/// with the primal certificate of any inner call. iterations_used counts all
/// inner updates; the iteration limit applies to that total.
inline SolveOutcome isnkpvn(const GramMatrix& g, const SolverConfig& config) {
  detail::validate_config(config);
  if (!(config.dual_epsilon > 0.0))
    throw std::invalid_argument("isnkpvn requires dual_epsilon > 0");
  SimplexVector q = SimplexVector::uniform(g.size());
  long total = 0;
  std::vector<IterationRecord> trace;

  while (true) {
    const long remaining = config.max_iterations - total;
    if (remaining <= 0) {
      SolveOutcome out;
      out.kind = SolveOutcome::Kind::limit;
      out.alpha = q.vec();
      const Vector decisions = g.matrix() * q.vec();
      const double quad = q.vec().dot(decisions);
      IterationRecord rec;
      rec.k = total;
      rec.mu = 0.0;
      rec.min_decision = decisions.minCoeff();
      rec.loss_value = -rec.min_decision + 0.5 * (quad > 0.0 ? quad : 0.0);
      rec.smoothed_loss_value = rec.loss_value;
      rec.p_gnorm = std::sqrt(quad > 0.0 ? quad : 0.0);
      out.last = rec;
      out.iterations_used = total;
      out.trace = std::move(trace);
      return out;
    }
    const double delta_t = g_norm(g, q.vec()) / config.gamma;
    SolverConfig inner = config;
    inner.max_iterations = remaining;
    SolveOutcome round = detail::smoothed_run(g, ProxFunction::euclidean(q),
                                              inner, delta_t, total);
    total += round.iterations_used;
    for (auto& rec : round.trace) trace.push_back(rec);
    round.trace.clear();
    if (round.kind != SolveOutcome::Kind::dual) {
      round.iterations_used = total;
      round.trace = std::move(trace);
      return round;  // primal certificate, or the budget ran out
    }
    q = *round.dual_certificate;
    if (delta_t < config.dual_epsilon) {
      round.iterations_used = total;
      round.trace = std::move(trace);
      return round;  // ||q||_G <= delta_t < epsilon
    }
  }
}

}  // namespace ksep
