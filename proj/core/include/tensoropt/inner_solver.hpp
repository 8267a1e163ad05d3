#pragma once

#include <string_view>

#include "tensoropt/linalg.hpp"
#include "tensoropt/model.hpp"
#include "tensoropt/oracle.hpp"
#include "tensoropt/trace.hpp"

namespace tensoropt {

/// Solves (H + (M/2)||h||^2 I) h = c for h, given H = Q diag(lambda) Q^T with
/// lambda >= 0 and M > 0.
///
/// With r = ||h|| the system decouples in the eigenbasis, and r is the unique
/// nonnegative root of ||h(r)|| = r where h(r) = Q diag(1/(lambda + M r^2/2)) Q^T c.
/// The left side decreases and the right side increases in r, so a safeguarded
/// Newton iteration on [0, (2||c||/M)^{1/3}] converges. The returned h has
/// residual at most tol * (1 + ||c||).
Vector secular_solve(const SpectralFactor& spectrum, double regularization,
                     const Vector& c, double tol);

struct BregmanStep {
  Vector y_next;
  /// -grad Omega(y_k) + 3 [grad rho(y_k) - grad rho(y_next)]; zero up to the
  /// secular tolerance when psi = 0.
  Vector g_psi;
};

/// y_next = argmin_y <grad Omega(y_k), y - y_k> + 3 beta_rho(y_k, y) + psi(y).
/// `model_grad_at_yk` is grad Omega(y_k). Only CompositeKind::Zero is
/// supported; other kinds throw UnsupportedComposite.
BregmanStep bregman_step(const ModelAnchor& anchor, const CompositeTerm& composite,
                         const Vector& y_k, const Vector& model_grad_at_yk,
                         double tol);

/// Convenience overload that evaluates grad Omega(y_k) through the oracle.
BregmanStep bregman_step(const ModelAnchor& anchor, const SmoothOracle& oracle,
                         const CompositeTerm& composite, const Vector& y_k,
                         double tol);

enum class StopReason { EpsilonSmall, ModelStationarity, SlowConvergence, IterationCap };

std::string_view to_string(StopReason reason);

struct InnerConfig {
  double epsilon = 1e-6;
  int max_inner = 10000;
  double secular_tol = 1e-12;

  void validate() const;
};

struct InnerResult {
  Vector x_plus;
  Vector g_psi;
  bool alpha = false;
  int iterations = 0;
  StopReason stop_reason = StopReason::IterationCap;
  double model_grad_norm = 0.0;  // ||grad Omega(x_plus) + g_psi|| at exit
  InnerConstants constants;
};

/// Bregman gradient method on the regularized model with the slow-convergence
/// detector. Starting from y_0 = x, after producing y_{k+1} it stops when
///   G <= eps/7                       (EpsilonSmall)
///   G <= (M/6) ||y_{k+1} - x||^3     (ModelStationarity)
///   G^4 > 3^8 L^4 beta / (2M 1.2^k)  (SlowConvergence, alpha = true)
/// with G = ||grad Omega(y_{k+1}) + g_psi(y_{k+1})||. One third_directional
/// call per iteration; the anchor supplies everything else.
///
/// Hitting `max_inner` returns stop_reason IterationCap with the last iterate;
/// callers must treat it as a failed run.
InnerResult run_inner(const ModelAnchor& anchor, const SmoothOracle& oracle,
                      const CompositeTerm& composite, const InnerConfig& config,
                      double grad_tilde_norm_at_anchor, TraceSink* trace = nullptr);

}  // namespace tensoropt
