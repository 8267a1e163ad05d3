#include "tensoropt/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tensoropt {

Vector fd_third_directional(const SmoothOracle& oracle, const Vector& x,
                            const Vector& h, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("finite-difference tau must be positive");
  }
  const Vector plus = oracle.gradient(x + tau * h);
  const Vector minus = oracle.gradient(x - tau * h);
  const Vector center = oracle.gradient(x);
  return (plus + minus - 2.0 * center) / (tau * tau);
}

FiniteDifferenceOracle::FiniteDifferenceOracle(
    std::shared_ptr<const SmoothOracle> inner, double tau)
    : SmoothOracle(inner ? inner->dimension() : 0), inner_(std::move(inner)), tau_(tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("finite-difference tau must be positive");
  }
}

double FiniteDifferenceOracle::compute_value(const Vector& x) const {
  return inner_->value(x);
}

Vector FiniteDifferenceOracle::compute_gradient(const Vector& x) const {
  return inner_->gradient(x);
}

Matrix FiniteDifferenceOracle::compute_hessian(const Vector& x) const {
  return inner_->hessian(x);
}

Vector FiniteDifferenceOracle::compute_third_directional(const Vector& x,
                                                         const Vector& h) const {
  return fd_third_directional(*inner_, x, h, tau_);
}

double FiniteDifferenceOracle::compute_hessian_trace(const Vector& x) const {
  return inner_->hessian_trace(x);
}

namespace {

// One step of Richardson extrapolation for an O(step^2) central scheme.
template <typename Scheme>
auto richardson(Scheme&& scheme, double step) {
  using Result = decltype(scheme(step));
  const Result coarse = scheme(step);
  const Result fine = scheme(0.5 * step);
  return Result((4.0 * fine - coarse) / 3.0);
}

double relative_gap(double approx, double exact) {
  return std::abs(approx - exact) / (1.0 + std::abs(exact));
}

double relative_gap(const Vector& approx, const Vector& exact) {
  return (approx - exact).norm() / (1.0 + exact.norm());
}

}  // namespace

DerivativeReport check_derivatives(const SmoothOracle& oracle, const Vector& x,
                                   const DerivativeCheckOptions& options) {
  constexpr double kGradientStep = 1e-3;
  constexpr double kHessianStep = 1e-3;
  constexpr double kThirdStep = 1e-2;

  DerivativeReport report;
  report.tol = options.tol;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;

  const Vector g = oracle.gradient(x);
  const Matrix hess = oracle.hessian(x);

  for (int d = 0; d < options.directions; ++d) {
    Vector dir(x.size());
    for (Index i = 0; i < dir.size(); ++i) dir(i) = normal(rng);
    dir.normalize();

    const double slope = richardson(
        [&](double s) {
          return (oracle.value(x + s * dir) - oracle.value(x - s * dir)) / (2.0 * s);
        },
        kGradientStep);
    report.gradient_error =
        std::max(report.gradient_error, relative_gap(slope, g.dot(dir)));

    const Vector hess_dir = richardson(
        [&](double s) -> Vector {
          return (oracle.gradient(x + s * dir) - oracle.gradient(x - s * dir)) /
                 (2.0 * s);
        },
        kHessianStep);
    report.hessian_error =
        std::max(report.hessian_error, relative_gap(hess_dir, Vector(hess * dir)));

    const Vector third = richardson(
        [&](double s) -> Vector { return fd_third_directional(oracle, x, dir, s); },
        kThirdStep);
    report.third_error = std::max(
        report.third_error, relative_gap(third, oracle.third_directional(x, dir)));
  }
  return report;
}

}  // namespace tensoropt
