#pragma once

#include <optional>

#include "tensoropt/linalg.hpp"
#include "tensoropt/oracle.hpp"

namespace tensoropt {

/// Binary classification data. The first feature column is the intercept and
/// is identically one; labels are exactly 0 or 1.
class Dataset {
 public:
  /// Validates and takes ownership. `features` must already contain the
  /// intercept column.
  Dataset(Matrix features, Vector labels);

  /// Prepends the intercept column to `raw_features`.
  static Dataset with_intercept(const Matrix& raw_features, Vector labels);

  const Matrix& features() const noexcept { return features_; }
  const Vector& labels() const noexcept { return labels_; }
  Index samples() const noexcept { return features_.rows(); }
  /// n + 1, the dimension of the parameter vector.
  Index parameters() const noexcept { return features_.cols(); }

 private:
  Matrix features_;
  Vector labels_;
};

/// Unregularized logistic loss
///   f(x) = -sum_i [ b_i log s_i + (1 - b_i) log(1 - s_i) ],  s_i = sigma(<a_i, x>).
class LogisticOracle final : public SmoothOracle {
 public:
  explicit LogisticOracle(Dataset data);

  const Dataset& data() const noexcept { return data_; }

 protected:
  double compute_value(const Vector& x) const override;
  Vector compute_gradient(const Vector& x) const override;
  Matrix compute_hessian(const Vector& x) const override;
  Vector compute_third_directional(const Vector& x,
                                   const Vector& h) const override;
  double compute_hessian_trace(const Vector& x) const override;

 private:
  Dataset data_;
  Vector row_sq_norms_;
};

/// f(x) = sum_i x_i^4. Known L_f = 24 and minimizer 0.
class QuarticOracle final : public SmoothOracle {
 public:
  explicit QuarticOracle(Index n);

  std::optional<double> lipschitz_third() const override { return 24.0; }
  Vector minimizer() const { return Vector::Zero(dimension()); }

 protected:
  double compute_value(const Vector& x) const override;
  Vector compute_gradient(const Vector& x) const override;
  Matrix compute_hessian(const Vector& x) const override;
  Vector compute_third_directional(const Vector& x,
                                   const Vector& h) const override;
  double compute_hessian_trace(const Vector& x) const override;
};

}  // namespace tensoropt
