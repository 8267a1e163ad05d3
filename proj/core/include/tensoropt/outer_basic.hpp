#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tensoropt/inner_solver.hpp"
#include "tensoropt/linalg.hpp"
#include "tensoropt/oracle.hpp"
#include "tensoropt/trace.hpp"

namespace tensoropt {

struct OuterOptions {
  double m0 = 1.0;
  double epsilon = 1e-6;
  int max_outer = 100000;
  int max_inner = 10000;
  double secular_tol = 1e-12;
  TraceSink* trace = nullptr;

  void validate() const;
};

enum class RunStatus { Converged, OuterCap, InnerCap };

std::string_view to_string(RunStatus status);

struct RunCounters {
  std::int64_t outer_iterations = 0;  // IT
  std::int64_t inner_executions = 0;  // BGM-E
  std::int64_t inner_iterations = 0;  // BGM-IT
  CallCounts calls;                   // CO = calls.total()
};

/// One execution of the inner solver inside the outer loop.
struct TrialRecord {
  int t = 0;
  int level = 0;                 // i
  double base_regularization = 0.0;  // M_t
  double regularization = 0.0;   // 2^i M_t
  bool alpha = false;
  int inner_iterations = 0;
  StopReason stop_reason = StopReason::IterationCap;
  Vector anchor;                 // x_t (basic) or z_{t,i} (accelerated)
  Vector x_plus;
  double grad_norm_plus = 0.0;   // ||grad f~(x+)||; 0 when alpha = 1 (not evaluated)
  std::optional<double> f_anchor_iterate;  // f~(x_t) when the decrease test ran
  std::optional<double> f_plus;            // f~(x+) when the decrease test ran
  bool accepted = false;
  bool converged = false;        // ||grad f~(x+)|| <= eps
};

struct SolveResult {
  Vector x;
  RunStatus status = RunStatus::OuterCap;
  RunCounters counters;
  double final_f = 0.0;
  double final_grad_norm = 0.0;
  std::vector<TrialRecord> trials;
  /// M_0, M_1, ..., one entry per outer iteration started.
  std::vector<double> regularization_history;
};

/// Smallest i >= 0 with 2^i M_t >= 2 M_0.
int initial_level(double m_t, double m0);

/// f~(x_t) - f~(x+) >= ||grad f~(x+)||^{4/3} / (6 M_level^{1/3}).
bool accept_test_basic(double f_tilde_x, double f_tilde_xplus, double grad_norm_xplus,
                       double m_level);

/// Basic adaptive third-order method.
///
/// Each outer iteration escalates the level i from initial_level(M_t, M_0),
/// running the inner solver on the model anchored at x_t with regularization
/// 2^i M_t until it certifies progress (alpha = 0) and either the gradient
/// test or the functional-decrease test passes. On acceptance
/// M_{t+1} = 2^{i-1} M_t. IT counts every iteration that produced a new
/// iterate, including the final one that meets the gradient tolerance.
SolveResult run_basic(const SmoothOracle& oracle, const CompositeTerm& composite,
                      const Vector& x0, const OuterOptions& options);

}  // namespace tensoropt
