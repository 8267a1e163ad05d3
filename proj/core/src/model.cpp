#include "tensoropt/model.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace tensoropt {
namespace {

void require_positive(double regularization) {
  if (!(regularization > 0.0)) {
    throw std::invalid_argument("regularization M must be positive");
  }
}

void require_dimension(const ModelAnchor& anchor, const Vector& y) {
  if (y.size() != anchor.dimension()) {
    throw std::invalid_argument("point has dimension " + std::to_string(y.size()) +
                                ", anchor has " +
                                std::to_string(anchor.dimension()));
  }
}

}  // namespace

SpectralFactor factor_psd(const Matrix& hessian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hessian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition of the Hessian failed");
  }
  SpectralFactor out{solver.eigenvalues(), solver.eigenvectors()};
  if (out.eigenvalues.size() == 0) return out;
  const double scale = std::max(1.0, std::abs(out.eigenvalues.maxCoeff()));
  const double floor = -1e-10 * scale;
  for (Index i = 0; i < out.eigenvalues.size(); ++i) {
    double& lambda = out.eigenvalues(i);
    if (lambda < floor) {
      throw ConvexityError("Hessian has eigenvalue " + std::to_string(lambda));
    }
    lambda = std::max(lambda, 0.0);
  }
  return out;
}

ModelAnchor ModelAnchor::evaluate(const SmoothOracle& oracle, const Vector& x,
                                  double regularization, const Known& known) {
  require_positive(regularization);
  std::optional<double> value = known.value;
  if (!value && known.fetch_value) value = oracle.value(x);
  Vector gradient = known.gradient ? *known.gradient : oracle.gradient(x);
  Matrix hessian = oracle.hessian(x);
  const double trace = oracle.hessian_trace(x);
  return ModelAnchor(x, value, std::move(gradient), std::move(hessian), trace,
                     regularization);
}

ModelAnchor::ModelAnchor(Vector x, std::optional<double> value, Vector gradient,
                         Matrix hessian, double hessian_trace,
                         double regularization)
    : regularization_(regularization) {
  require_positive(regularization);
  const Index n = x.size();
  if (gradient.size() != n || hessian.rows() != n || hessian.cols() != n) {
    throw std::invalid_argument("anchor derivatives do not match the point dimension");
  }
  auto frozen = std::make_shared<Frozen>();
  frozen->spectrum = factor_psd(hessian);
  frozen->x = std::move(x);
  frozen->value = value;
  frozen->gradient = std::move(gradient);
  frozen->hessian = std::move(hessian);
  frozen->trace = hessian_trace;
  frozen_ = std::move(frozen);
}

ModelAnchor::ModelAnchor(std::shared_ptr<const Frozen> frozen,
                         double regularization)
    : frozen_(std::move(frozen)), regularization_(regularization) {
  require_positive(regularization);
}

ModelAnchor ModelAnchor::with_regularization(double regularization) const {
  return ModelAnchor(frozen_, regularization);
}

double ModelAnchor::value() const {
  if (!frozen_->value) {
    throw std::logic_error("anchor was built without f(x)");
  }
  return *frozen_->value;
}

double d4_value(const Vector& h) {
  const double sq = h.squaredNorm();
  return 0.25 * sq * sq;
}

Vector d4_grad(const Vector& h) { return h.squaredNorm() * h; }

double taylor3_value(const ModelAnchor& anchor, const SmoothOracle& oracle,
                     const Vector& y) {
  require_dimension(anchor, y);
  const Vector h = y - anchor.point();
  const Vector third = oracle.third_directional(anchor.point(), h);
  return anchor.value() + anchor.gradient().dot(h) +
         0.5 * h.dot(anchor.hessian() * h) + third.dot(h) / 6.0;
}

double omega_value(const ModelAnchor& anchor, const SmoothOracle& oracle,
                   const Vector& y) {
  const Vector h = y - anchor.point();
  return taylor3_value(anchor, oracle, y) +
         0.5 * anchor.regularization() * d4_value(h);
}

Vector omega_grad_with_third(const ModelAnchor& anchor, const Vector& y,
                             const Vector& third_directional) {
  require_dimension(anchor, y);
  const Vector h = y - anchor.point();
  return anchor.gradient() + anchor.hessian() * h + 0.5 * third_directional +
         0.5 * anchor.regularization() * h.squaredNorm() * h;
}

Vector omega_grad(const ModelAnchor& anchor, const SmoothOracle& oracle,
                  const Vector& y) {
  require_dimension(anchor, y);
  const Vector h = y - anchor.point();
  return omega_grad_with_third(anchor, y, oracle.third_directional(anchor.point(), h));
}

double rho_value(const ModelAnchor& anchor, const Vector& y) {
  require_dimension(anchor, y);
  const Vector h = y - anchor.point();
  return 0.5 * h.dot(anchor.hessian() * h) +
         0.5 * anchor.regularization() * d4_value(h);
}

Vector rho_grad(const ModelAnchor& anchor, const Vector& y) {
  require_dimension(anchor, y);
  const Vector h = y - anchor.point();
  return anchor.hessian() * h + 0.5 * anchor.regularization() * h.squaredNorm() * h;
}

double bregman_div(const ModelAnchor& anchor, const Vector& u, const Vector& v) {
  require_dimension(anchor, u);
  require_dimension(anchor, v);
  return rho_value(anchor, v) - rho_value(anchor, u) -
         rho_grad(anchor, u).dot(v - u);
}

InnerConstants inner_constants(const ModelAnchor& anchor, double grad_tilde_norm) {
  if (!(grad_tilde_norm >= 0.0)) {
    throw std::invalid_argument("subgradient norm must be nonnegative");
  }
  const double m = anchor.regularization();
  const double radius = std::cbrt(96.0 * grad_tilde_norm / m);  // [96 g / M]^{1/3}
  const double bracket = radius * radius;
  InnerConstants out;
  out.lipschitz = anchor.hessian_trace() + 1.5 * m * bracket;
  out.beta = 0.5 * anchor.hessian_trace() * bracket + 0.125 * m * bracket * bracket;
  return out;
}

}  // namespace tensoropt
