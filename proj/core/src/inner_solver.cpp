#include "tensoropt/inner_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tensoropt {
namespace {

constexpr int kMaxSecularIterations = 200;

// Scalar search of secular_solve, stopping once the residual of the full
// system is at most `target` (or the bracket has collapsed to rounding).
Vector secular_solve_to(const SpectralFactor& spectrum, double regularization,
                        const Vector& c, double target) {
  const double c_norm = c.norm();
  if (c_norm == 0.0) return Vector::Zero(c.size());

  const Vector& lambda = spectrum.eigenvalues;
  const Vector rotated = spectrum.eigenvectors.transpose() * c;
  const Vector rotated_sq = rotated.array().square();
  const double half_m = 0.5 * regularization;

  auto solution_at = [&](double r) -> Vector {
    const Vector denom = lambda.array() + half_m * r * r;
    return spectrum.eigenvectors * (rotated.array() / denom.array()).matrix();
  };

  double lo = 0.0;
  double hi = std::cbrt(c_norm / half_m);
  double r = hi;
  for (int iter = 0; iter < kMaxSecularIterations; ++iter) {
    const Eigen::ArrayXd denom = lambda.array() + half_m * r * r;
    const double sum2 = (rotated_sq.array() / denom.square()).sum();
    const double sum3 = (rotated_sq.array() / denom.cube()).sum();
    const double h_norm = std::sqrt(sum2);

    const double residual = half_m * std::abs(sum2 - r * r) * h_norm;
    if (residual <= target) return solution_at(r);

    const double gap = r - h_norm;  // increasing in r
    if (gap < 0.0) {
      lo = r;
    } else {
      hi = r;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return solution_at(r);
    }
    const double slope = 1.0 + regularization * r * sum3 / h_norm;
    double next = r - gap / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
  }
  throw std::logic_error("secular equation search did not converge");
}

}  // namespace

Vector secular_solve(const SpectralFactor& spectrum, double regularization,
                     const Vector& c, double tol) {
  if (!(regularization > 0.0)) {
    throw std::invalid_argument("regularization M must be positive");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("secular tolerance must be positive");
  if (c.size() != spectrum.eigenvalues.size()) {
    throw std::invalid_argument("right-hand side does not match the factorization");
  }
  return secular_solve_to(spectrum, regularization, c, tol * (1.0 + c.norm()));
}

BregmanStep bregman_step(const ModelAnchor& anchor, const CompositeTerm& composite,
                         const Vector& y_k, const Vector& model_grad_at_yk,
                         double tol) {
  if (composite.kind() != CompositeKind::Zero) {
    throw UnsupportedComposite("Bregman step is only implemented for psi = 0");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("secular tolerance must be positive");
  const Vector rho_grad_k = rho_grad(anchor, y_k);
  const Vector c = rho_grad_k - model_grad_at_yk / 3.0;
  // The optimality residual is three times the secular residual.
  const double target = tol * (1.0 + model_grad_at_yk.norm()) / 3.0;
  const Vector h = secular_solve_to(anchor.spectrum(), anchor.regularization(), c, target);

  BregmanStep step;
  step.y_next = anchor.point() + h;
  step.g_psi = -model_grad_at_yk + 3.0 * (rho_grad_k - rho_grad(anchor, step.y_next));
  return step;
}

BregmanStep bregman_step(const ModelAnchor& anchor, const SmoothOracle& oracle,
                         const CompositeTerm& composite, const Vector& y_k,
                         double tol) {
  return bregman_step(anchor, composite, y_k, omega_grad(anchor, oracle, y_k), tol);
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::EpsilonSmall: return "epsilon_small";
    case StopReason::ModelStationarity: return "model_stationarity";
    case StopReason::SlowConvergence: return "slow_convergence";
    case StopReason::IterationCap: return "iteration_cap";
  }
  return "unknown";
}

void InnerConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (max_inner <= 0) throw std::invalid_argument("max_inner must be positive");
  if (!(secular_tol > 0.0)) throw std::invalid_argument("secular_tol must be positive");
}

InnerResult run_inner(const ModelAnchor& anchor, const SmoothOracle& oracle,
                      const CompositeTerm& composite, const InnerConfig& config,
                      double grad_tilde_norm_at_anchor, TraceSink* trace) {
  config.validate();
  if (composite.kind() != CompositeKind::Zero) {
    throw UnsupportedComposite("inner solver only supports psi = 0");
  }

  InnerResult result;
  result.constants = inner_constants(anchor, grad_tilde_norm_at_anchor);
  const double m = anchor.regularization();
  const double lipschitz = result.constants.lipschitz;
  const double slow_scale = std::pow(3.0, 8) * std::pow(lipschitz, 4) *
                            result.constants.beta / (2.0 * m);
  const Vector& x = anchor.point();

  Vector y = x;
  Vector model_grad = anchor.gradient();  // grad Omega(x) = grad f(x)

  for (int k = 0;; ++k) {
    if (k >= config.max_inner) {
      result.x_plus = y;
      result.g_psi = Vector::Zero(x.size());
      result.iterations = k;
      result.stop_reason = StopReason::IterationCap;
      result.model_grad_norm = model_grad.norm();
      return result;
    }

    BregmanStep step = bregman_step(anchor, composite, y, model_grad, config.secular_tol);
    const Vector h = step.y_next - x;
    Vector next_grad =
        omega_grad_with_third(anchor, step.y_next, oracle.third_directional(x, h));
    // psi = 0 has the single subgradient 0.
    const double g_norm = next_grad.norm();
    const double step_norm = h.norm();
    const double slow_bound = slow_scale / std::pow(1.2, k);

    if (trace) trace->inner({k, g_norm, step_norm, slow_bound});

    y = std::move(step.y_next);
    model_grad = std::move(next_grad);

    bool stop = true;
    if (g_norm <= config.epsilon / 7.0) {
      result.stop_reason = StopReason::EpsilonSmall;
    } else if (g_norm <= m / 6.0 * step_norm * step_norm * step_norm) {
      result.stop_reason = StopReason::ModelStationarity;
    } else if (std::pow(g_norm, 4) > slow_bound) {
      result.stop_reason = StopReason::SlowConvergence;
      result.alpha = true;
    } else {
      stop = false;
    }
    if (stop) {
      result.x_plus = std::move(y);
      result.g_psi = Vector::Zero(x.size());
      result.iterations = k + 1;
      result.model_grad_norm = g_norm;
      return result;
    }
  }
}

}  // namespace tensoropt
