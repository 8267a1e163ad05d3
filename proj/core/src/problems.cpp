#include "tensoropt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tensoropt {
namespace {

// log(1 + e^u) without overflow.
double softplus(double u) {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

Dataset::Dataset(Matrix features, Vector labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() == 0 || features_.cols() == 0) {
    throw std::invalid_argument("dataset is empty");
  }
  if (labels_.size() != features_.rows()) {
    throw std::invalid_argument("dataset has " + std::to_string(features_.rows()) +
                                " rows but " + std::to_string(labels_.size()) +
                                " labels");
  }
  for (Index i = 0; i < features_.rows(); ++i) {
    if (features_(i, 0) != 1.0) {
      throw std::invalid_argument("intercept column is not 1 in row " +
                                  std::to_string(i));
    }
    if (labels_(i) != 0.0 && labels_(i) != 1.0) {
      throw std::invalid_argument("label in row " + std::to_string(i) +
                                  " is not 0 or 1");
    }
  }
  if (!features_.allFinite()) {
    throw std::invalid_argument("dataset features must be finite");
  }
}

Dataset Dataset::with_intercept(const Matrix& raw_features, Vector labels) {
  Matrix features(raw_features.rows(), raw_features.cols() + 1);
  features.col(0).setOnes();
  features.rightCols(raw_features.cols()) = raw_features;
  return Dataset(std::move(features), std::move(labels));
}

LogisticOracle::LogisticOracle(Dataset data)
    : SmoothOracle(data.parameters()),
      data_(std::move(data)),
      row_sq_norms_(data_.features().rowwise().squaredNorm()) {}

double LogisticOracle::compute_value(const Vector& x) const {
  const Vector u = data_.features() * x;
  double f = 0.0;
  for (Index i = 0; i < u.size(); ++i) {
    f += softplus(u(i)) - data_.labels()(i) * u(i);
  }
  return f;
}

Vector LogisticOracle::compute_gradient(const Vector& x) const {
  const Vector u = data_.features() * x;
  Vector residual(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    residual(i) = sigmoid(u(i)) - data_.labels()(i);
  }
  return data_.features().transpose() * residual;
}

Matrix LogisticOracle::compute_hessian(const Vector& x) const {
  const Vector u = data_.features() * x;
  Vector w(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    w(i) = sigmoid(u(i)) * sigmoid(-u(i));
  }
  const Matrix& a = data_.features();
  Matrix hess = a.transpose() * w.asDiagonal() * a;
  // Exact symmetry regardless of summation order.
  return 0.5 * (hess + hess.transpose());
}

Vector LogisticOracle::compute_third_directional(const Vector& x,
                                                 const Vector& h) const {
  const Matrix& a = data_.features();
  const Vector u = a * x;
  const Vector ah = a * h;
  Vector w(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    const double s = sigmoid(u(i));
    const double sm = sigmoid(-u(i));
    w(i) = s * sm * (sm - s) * ah(i) * ah(i);
  }
  return a.transpose() * w;
}

double LogisticOracle::compute_hessian_trace(const Vector& x) const {
  const Vector u = data_.features() * x;
  double tr = 0.0;
  for (Index i = 0; i < u.size(); ++i) {
    tr += sigmoid(u(i)) * sigmoid(-u(i)) * row_sq_norms_(i);
  }
  return tr;
}

QuarticOracle::QuarticOracle(Index n) : SmoothOracle(n) {}

double QuarticOracle::compute_value(const Vector& x) const {
  return x.array().square().square().sum();
}

Vector QuarticOracle::compute_gradient(const Vector& x) const {
  return 4.0 * x.array().cube();
}

Matrix QuarticOracle::compute_hessian(const Vector& x) const {
  return (12.0 * x.array().square()).matrix().asDiagonal();
}

Vector QuarticOracle::compute_third_directional(const Vector& x,
                                                const Vector& h) const {
  return 24.0 * x.array() * h.array().square();
}

double QuarticOracle::compute_hessian_trace(const Vector& x) const {
  return 12.0 * x.squaredNorm();
}

}  // namespace tensoropt
