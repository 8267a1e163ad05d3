#include "tensoropt/outer_basic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tensoropt/model.hpp"

namespace tensoropt {

void OuterOptions::validate() const {
  if (!(m0 > 0.0)) throw std::invalid_argument("M0 must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (max_outer <= 0) throw std::invalid_argument("max_outer must be positive");
  if (max_inner <= 0) throw std::invalid_argument("max_inner must be positive");
  if (!(secular_tol > 0.0)) throw std::invalid_argument("secular_tol must be positive");
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::OuterCap: return "outer_cap";
    case RunStatus::InnerCap: return "inner_cap";
  }
  return "unknown";
}

int initial_level(double m_t, double m0) {
  if (!(m0 > 0.0) || !(m_t > 0.0)) {
    throw std::invalid_argument("regularization estimates must be positive");
  }
  int i = 0;
  while (std::ldexp(m_t, i) < 2.0 * m0) ++i;
  return i;
}

bool accept_test_basic(double f_tilde_x, double f_tilde_xplus, double grad_norm_xplus,
                       double m_level) {
  const double rhs = std::pow(grad_norm_xplus, 4.0 / 3.0) / (6.0 * std::cbrt(m_level));
  return f_tilde_x - f_tilde_xplus >= rhs;
}

namespace {

// Levels past this are a numerical breakdown, not a theoretical possibility.
constexpr int kMaxLevel = 1000;

void check_composite(const CompositeTerm& composite, const Vector& x0) {
  if (composite.kind() != CompositeKind::Zero) {
    throw UnsupportedComposite("outer solvers only support psi = 0");
  }
  if (!composite.in_domain(x0)) {
    throw std::invalid_argument("starting point is outside dom psi");
  }
}

}  // namespace

SolveResult run_basic(const SmoothOracle& oracle, const CompositeTerm& composite,
                      const Vector& x0, const OuterOptions& options) {
  options.validate();
  check_composite(composite, x0);
  if (x0.size() != oracle.dimension()) {
    throw std::invalid_argument("starting point has the wrong dimension");
  }

  const CallCounts start_calls = oracle.counts();
  const InnerConfig inner_config{options.epsilon, options.max_inner, options.secular_tol};

  SolveResult result;
  Vector x = x0;
  std::optional<double> f_x = oracle.value(x) + composite.value(x);
  Vector g_x = oracle.gradient(x);
  double m_t = options.m0;
  bool done = false;

  for (int t = 0; !done; ++t) {
    if (t >= options.max_outer) {
      result.status = RunStatus::OuterCap;
      break;
    }
    result.regularization_history.push_back(m_t);
    int level = initial_level(m_t, options.m0);
    const ModelAnchor base = ModelAnchor::evaluate(
        oracle, x, std::ldexp(m_t, level), ModelAnchor::Known{f_x, g_x, false});
    const double anchor_grad_norm = g_x.norm();

    for (;; ++level) {
      if (level > kMaxLevel) {
        throw std::runtime_error("regularization level overflow at outer iteration " +
                                 std::to_string(t));
      }
      const double m_level = std::ldexp(m_t, level);
      const InnerResult inner =
          run_inner(base.with_regularization(m_level), oracle, composite,
                    inner_config, anchor_grad_norm, options.trace);
      ++result.counters.inner_executions;
      result.counters.inner_iterations += inner.iterations;

      TrialRecord rec;
      rec.t = t;
      rec.level = level;
      rec.base_regularization = m_t;
      rec.regularization = m_level;
      rec.alpha = inner.alpha;
      rec.inner_iterations = inner.iterations;
      rec.stop_reason = inner.stop_reason;
      rec.anchor = x;
      rec.x_plus = inner.x_plus;

      auto emit = [&](const TrialRecord& r) {
        if (options.trace) {
          options.trace->outer({r.t, r.level, r.regularization, r.alpha,
                                r.inner_iterations, r.f_plus, r.grad_norm_plus,
                                r.accepted, std::nullopt});
        }
        result.trials.push_back(r);
      };

      if (inner.stop_reason == StopReason::IterationCap) {
        emit(rec);
        result.status = RunStatus::InnerCap;
        done = true;
        break;
      }
      if (inner.alpha) {
        emit(rec);
        continue;
      }

      Vector g_plus = oracle.gradient(inner.x_plus);
      rec.grad_norm_plus = g_plus.norm();
      if (rec.grad_norm_plus <= options.epsilon) {
        rec.converged = true;
        emit(rec);
        x = inner.x_plus;
        g_x = std::move(g_plus);
        f_x.reset();
        ++result.counters.outer_iterations;
        result.status = RunStatus::Converged;
        done = true;
        break;
      }

      const double f_plus = oracle.value(inner.x_plus) + composite.value(inner.x_plus);
      rec.f_anchor_iterate = *f_x;
      rec.f_plus = f_plus;
      rec.accepted = accept_test_basic(*f_x, f_plus, rec.grad_norm_plus, m_level);
      emit(rec);
      if (rec.accepted) {
        x = inner.x_plus;
        f_x = f_plus;
        g_x = std::move(g_plus);
        m_t = std::ldexp(m_t, level - 1);
        ++result.counters.outer_iterations;
        break;
      }
    }
  }

  result.x = x;
  result.final_grad_norm = g_x.norm();
  result.final_f = f_x ? *f_x : oracle.value(x) + composite.value(x);
  result.counters.calls = oracle.counts() - start_calls;
  return result;
}

}  // namespace tensoropt
