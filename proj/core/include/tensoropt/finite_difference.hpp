#pragma once

#include <cstdint>
#include <memory>

#include "tensoropt/linalg.hpp"
#include "tensoropt/oracle.hpp"

namespace tensoropt {

/// Second central difference of the gradient,
///   T_tau(h) = [grad f(x + tau h) + grad f(x - tau h) - 2 grad f(x)] / tau^2,
/// which approximates D^3 f(x)[h]^2 with error at most (L_f / 3) tau ||h||^3.
/// Costs three gradient calls on `oracle`. Throws std::invalid_argument for
/// tau <= 0.
Vector fd_third_directional(const SmoothOracle& oracle, const Vector& x,
                            const Vector& h, double tau);

/// Second-order oracle lifted to third order: every entry point forwards to
/// the wrapped oracle except third_directional, which uses
/// fd_third_directional with a fixed tau. Call accounting is the wrapped
/// oracle's, so one third_directional costs three gradient calls.
class FiniteDifferenceOracle final : public SmoothOracle {
 public:
  FiniteDifferenceOracle(std::shared_ptr<const SmoothOracle> inner, double tau);

  double tau() const noexcept { return tau_; }
  const SmoothOracle& inner() const noexcept { return *inner_; }

  std::optional<double> lipschitz_third() const override {
    return inner_->lipschitz_third();
  }
  CallCounts counts() const override { return inner_->counts(); }
  void reset_counts() const override { inner_->reset_counts(); }

 protected:
  double compute_value(const Vector& x) const override;
  Vector compute_gradient(const Vector& x) const override;
  Matrix compute_hessian(const Vector& x) const override;
  Vector compute_third_directional(const Vector& x,
                                   const Vector& h) const override;
  double compute_hessian_trace(const Vector& x) const override;

 private:
  std::shared_ptr<const SmoothOracle> inner_;
  double tau_;
};

struct DerivativeCheckOptions {
  double tol = 1e-5;
  int directions = 4;
  std::uint64_t seed = 7;
};

/// Worst error per derivative order, measured as ||approx - exact|| / (1 + ||exact||).
struct DerivativeReport {
  double gradient_error = 0.0;
  double hessian_error = 0.0;
  double third_error = 0.0;
  double tol = 0.0;

  bool gradient_ok() const { return gradient_error <= tol; }
  bool hessian_ok() const { return hessian_error <= tol; }
  bool third_ok() const { return third_error <= tol; }
  bool passed() const { return gradient_ok() && hessian_ok() && third_ok(); }
};

/// Compares every derivative of `oracle` at `x` against Richardson-extrapolated
/// central differences of the next lower order, along random unit directions.
DerivativeReport check_derivatives(const SmoothOracle& oracle, const Vector& x,
                                   const DerivativeCheckOptions& options = {});

inline DerivativeReport check_derivatives(const SmoothOracle& oracle,
                                          const Vector& x, double tol) {
  DerivativeCheckOptions options;
  options.tol = tol;
  return check_derivatives(oracle, x, options);
}

}  // namespace tensoropt
