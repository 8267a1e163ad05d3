#pragma once

#include <vector>

#include "tensoropt/linalg.hpp"
#include "tensoropt/outer_basic.hpp"

namespace tensoropt {

/// Estimating-sequence state of the accelerated method for psi = 0:
///   phi_t(y) = ||y - x_0||^4 / 4 + <lin_acc, y> + const_acc,
/// where lin_acc = sum_k a_k grad f(x_{k+1}) and
/// const_acc = sum_k a_k [f(x_{k+1}) - <grad f(x_{k+1}), x_{k+1}>].
struct AccelState {
  Vector x;
  Vector v;
  Vector x0;
  Vector lin_acc;
  double const_acc = 0.0;
  double A = 0.0;

  static AccelState start(const Vector& x0);

  /// phi_t(y).
  double phi(const Vector& y) const;
  /// min phi_t = phi_t(v_t).
  double phi_star() const { return phi(v); }
};

/// Unique a > 0 with a^4 = 16 (A + a)^3 / (18^3 M_level).
double solve_a(double A, double m_level, double tol = 1e-12);

/// (1 - gamma) x_t + gamma v_t with gamma = a / (A + a).
Vector mix_z(const Vector& x_t, const Vector& v_t, double A, double a);

/// <grad f~(x+), z - x+> >= ||grad f~(x+)||^{4/3} / (6 M_level^{1/3}).
bool accept_test_accel(const Vector& grad_xplus, const Vector& z, const Vector& x_plus,
                       double m_level);

/// Adds a_t times the linearization of f at x_{t+1} to phi and moves v to
/// its exact minimizer x_0 - lin_acc / ||lin_acc||^{2/3}. Also sets x = x_next
/// and A += a_t.
AccelState update_phi_and_v(const AccelState& state, double a_t, const Vector& x_next,
                            double f_next, const Vector& grad_next);

/// Per accepted iteration of run_accel.
struct AccelRecord {
  int t = 0;
  int level = 0;
  double regularization = 0.0;  // 2^{i_t} M_t
  double a = 0.0;
  double gamma = 0.0;
  double A_next = 0.0;          // A_{t+1}
  double f_next = 0.0;          // f~(x_{t+1})
  double phi_star_next = 0.0;   // phi_{t+1}(v_{t+1})
  Vector x_next;
  Vector v_next;
};

struct AccelSolveResult : SolveResult {
  std::vector<AccelRecord> steps;
};

/// Accelerated adaptive third-order method. Same level escalation as
/// run_basic, but the model is anchored at z_{t,i}, a mix of x_t and v_t that
/// is recomputed at every level, and acceptance uses the directional test.
AccelSolveResult run_accel(const SmoothOracle& oracle, const CompositeTerm& composite,
                           const Vector& x0, const OuterOptions& options);

}  // namespace tensoropt
