#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "tensoropt/linalg.hpp"
#include "tensoropt/oracle.hpp"

namespace tensoropt {

/// Raised when a Hessian has an eigenvalue clearly below zero.
class ConvexityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// H = Q diag(lambda) Q^T with lambda >= 0 (tiny negatives clamped).
struct SpectralFactor {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Eigenvalues below -1e-10 * max(1, |lambda_max|) raise ConvexityError.
SpectralFactor factor_psd(const Matrix& hessian);

/// Frozen derivatives of f at an anchor point x together with the
/// regularization M of the quartic model
///   Omega_{x,M}(y) = Phi_x(y) + (M/2) d4(y - x)
/// and the scaling function rho_x. Copies share the frozen data.
class ModelAnchor {
 public:
  struct Known {
    std::optional<double> value;
    std::optional<Vector> gradient;
    /// Fetch f(x) from the oracle when `value` is empty. Only taylor3_value
    /// and omega_value need it.
    bool fetch_value = true;
  };

  /// Queries the oracle for whatever `known` does not supply: value (if
  /// requested), gradient, Hessian and Hessian trace.
  static ModelAnchor evaluate(const SmoothOracle& oracle, const Vector& x,
                              double regularization, const Known& known);
  static ModelAnchor evaluate(const SmoothOracle& oracle, const Vector& x,
                              double regularization) {
    return evaluate(oracle, x, regularization, Known{});
  }

  ModelAnchor(Vector x, std::optional<double> value, Vector gradient,
              Matrix hessian, double hessian_trace, double regularization);

  /// Same anchor, different M. No oracle calls, no refactorization.
  ModelAnchor with_regularization(double regularization) const;

  const Vector& point() const noexcept { return frozen_->x; }
  Index dimension() const noexcept { return frozen_->x.size(); }
  /// f(x); throws std::logic_error if the anchor was built without it.
  double value() const;
  bool has_value() const noexcept { return frozen_->value.has_value(); }
  const Vector& gradient() const noexcept { return frozen_->gradient; }
  const Matrix& hessian() const noexcept { return frozen_->hessian; }
  double hessian_trace() const noexcept { return frozen_->trace; }
  const SpectralFactor& spectrum() const noexcept { return frozen_->spectrum; }
  double regularization() const noexcept { return regularization_; }

 private:
  struct Frozen {
    Vector x;
    std::optional<double> value;
    Vector gradient;
    Matrix hessian;
    double trace = 0.0;
    SpectralFactor spectrum;
  };

  ModelAnchor(std::shared_ptr<const Frozen> frozen, double regularization);

  std::shared_ptr<const Frozen> frozen_;
  double regularization_;
};

/// d4(h) = ||h||^4 / 4.
double d4_value(const Vector& h);
/// grad d4(h) = ||h||^2 h.
Vector d4_grad(const Vector& h);

/// Phi_x(y) = f(x) + <g, h> + <H h, h>/2 + <D^3 f(x)[h]^2, h>/6, h = y - x.
double taylor3_value(const ModelAnchor& anchor, const SmoothOracle& oracle,
                     const Vector& y);

double omega_value(const ModelAnchor& anchor, const SmoothOracle& oracle,
                   const Vector& y);

/// grad Omega(y) = g + H h + D^3 f(x)[h]^2 / 2 + (M/2)||h||^2 h.
Vector omega_grad(const ModelAnchor& anchor, const SmoothOracle& oracle,
                  const Vector& y);

/// Same as above with D^3 f(x)[y - x]^2 already evaluated.
Vector omega_grad_with_third(const ModelAnchor& anchor, const Vector& y,
                             const Vector& third_directional);

double rho_value(const ModelAnchor& anchor, const Vector& y);
Vector rho_grad(const ModelAnchor& anchor, const Vector& y);

/// beta_rho(u, v) = rho(v) - rho(u) - <grad rho(u), v - u>.
double bregman_div(const ModelAnchor& anchor, const Vector& u, const Vector& v);

struct InnerConstants {
  double lipschitz = 0.0;  // L_{x,M}
  double beta = 0.0;       // beta_{x,M}
};

/// With r = [96 g / M]^{1/3}:
///   L = tr(H) + (3M/2) r^2,   beta = tr(H) r^2 / 2 + (M/8) r^4.
InnerConstants inner_constants(const ModelAnchor& anchor, double grad_tilde_norm);

}  // namespace tensoropt
