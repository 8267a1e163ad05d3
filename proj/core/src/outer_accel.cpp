#include "tensoropt/outer_accel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tensoropt/model.hpp"

namespace tensoropt {
namespace {

constexpr double kCube18 = 18.0 * 18.0 * 18.0;
constexpr int kMaxLevel = 1000;

}  // namespace

AccelState AccelState::start(const Vector& x0) {
  AccelState s;
  s.x = x0;
  s.v = x0;
  s.x0 = x0;
  s.lin_acc = Vector::Zero(x0.size());
  return s;
}

double AccelState::phi(const Vector& y) const {
  return d4_value(y - x0) + lin_acc.dot(y) + const_acc;
}

double solve_a(double A, double m_level, double tol) {
  if (!(m_level > 0.0)) throw std::invalid_argument("M_level must be positive");
  if (!(A >= 0.0)) throw std::invalid_argument("A must be nonnegative");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const double lead = kCube18 * m_level;
  if (A == 0.0) return 16.0 / lead;

  // g(a) = lead a^4 - 16 (A + a)^3, negative at 0 and eventually positive.
  auto g = [&](double a) { return lead * a * a * a * a - 16.0 * std::pow(A + a, 3); };
  auto scale = [&](double a) { return 16.0 * std::pow(A + a, 3); };

  double lo = 0.0;
  double hi = std::max(1.0, 4.0 * std::pow(16.0 * std::pow(A + 1.0, 3) / lead, 0.25));
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double a = 0.5 * (lo + hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double value = g(a);
    if (std::abs(value) <= tol * scale(a)) return a;
    if (value < 0.0) {
      lo = a;
    } else {
      hi = a;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return a;
    const double slope = 4.0 * lead * a * a * a - 48.0 * (A + a) * (A + a);
    double next = slope != 0.0 ? a - value / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    a = next;
  }
  throw std::logic_error("coefficient equation search did not converge");
}

Vector mix_z(const Vector& x_t, const Vector& v_t, double A, double a) {
  const double gamma = a / (A + a);
  return (1.0 - gamma) * x_t + gamma * v_t;
}

bool accept_test_accel(const Vector& grad_xplus, const Vector& z, const Vector& x_plus,
                       double m_level) {
  const double lhs = grad_xplus.dot(z - x_plus);
  const double rhs = std::pow(grad_xplus.norm(), 4.0 / 3.0) / (6.0 * std::cbrt(m_level));
  return lhs >= rhs;
}

AccelState update_phi_and_v(const AccelState& state, double a_t, const Vector& x_next,
                            double f_next, const Vector& grad_next) {
  AccelState out = state;
  out.lin_acc += a_t * grad_next;
  out.const_acc += a_t * (f_next - grad_next.dot(x_next));
  const double lin_norm = out.lin_acc.norm();
  out.v = lin_norm > 0.0 ? Vector(out.x0 - out.lin_acc / std::cbrt(lin_norm * lin_norm))
                         : out.x0;
  out.A = state.A + a_t;
  out.x = x_next;
  return out;
}

AccelSolveResult run_accel(const SmoothOracle& oracle, const CompositeTerm& composite,
                           const Vector& x0, const OuterOptions& options) {
  options.validate();
  if (composite.kind() != CompositeKind::Zero) {
    throw UnsupportedComposite("outer solvers only support psi = 0");
  }
  if (!composite.in_domain(x0)) {
    throw std::invalid_argument("starting point is outside dom psi");
  }
  if (x0.size() != oracle.dimension()) {
    throw std::invalid_argument("starting point has the wrong dimension");
  }

  const CallCounts start_calls = oracle.counts();
  const InnerConfig inner_config{options.epsilon, options.max_inner, options.secular_tol};

  AccelSolveResult result;
  AccelState state = AccelState::start(x0);
  std::optional<double> f_x;
  std::optional<Vector> g_x;
  double m_t = options.m0;
  bool done = false;

  for (int t = 0; !done; ++t) {
    if (t >= options.max_outer) {
      result.status = RunStatus::OuterCap;
      break;
    }
    result.regularization_history.push_back(m_t);

    for (int level = initial_level(m_t, options.m0);; ++level) {
      if (level > kMaxLevel) {
        throw std::runtime_error("regularization level overflow at outer iteration " +
                                 std::to_string(t));
      }
      const double m_level = std::ldexp(m_t, level);
      const double a = solve_a(state.A, m_level);
      const double gamma = a / (state.A + a);
      const Vector z = mix_z(state.x, state.v, state.A, a);

      const ModelAnchor anchor =
          ModelAnchor::evaluate(oracle, z, m_level, ModelAnchor::Known{{}, {}, false});
      const InnerResult inner = run_inner(anchor, oracle, composite, inner_config,
                                          anchor.gradient().norm(), options.trace);
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
      rec.anchor = z;
      rec.x_plus = inner.x_plus;

      auto emit = [&](const TrialRecord& r, std::optional<AccelTraceExtra> extra) {
        if (options.trace) {
          options.trace->outer({r.t, r.level, r.regularization, r.alpha,
                                r.inner_iterations, r.f_plus, r.grad_norm_plus,
                                r.accepted, extra});
        }
        result.trials.push_back(r);
      };

      if (inner.stop_reason == StopReason::IterationCap) {
        emit(rec, std::nullopt);
        result.status = RunStatus::InnerCap;
        done = true;
        break;
      }
      if (inner.alpha) {
        emit(rec, std::nullopt);
        continue;
      }

      Vector g_plus = oracle.gradient(inner.x_plus);
      rec.grad_norm_plus = g_plus.norm();
      if (rec.grad_norm_plus <= options.epsilon) {
        rec.converged = true;
        emit(rec, std::nullopt);
        state.x = inner.x_plus;
        g_x = std::move(g_plus);
        f_x.reset();
        ++result.counters.outer_iterations;
        result.status = RunStatus::Converged;
        done = true;
        break;
      }

      rec.accepted = accept_test_accel(g_plus, z, inner.x_plus, m_level);
      if (!rec.accepted) {
        emit(rec, std::nullopt);
        continue;
      }

      const double f_plus = oracle.value(inner.x_plus) + composite.value(inner.x_plus);
      rec.f_plus = f_plus;
      state = update_phi_and_v(state, a, inner.x_plus, f_plus, g_plus);
      f_x = f_plus;
      g_x = std::move(g_plus);
      m_t = std::ldexp(m_t, level - 1);
      ++result.counters.outer_iterations;

      AccelRecord step;
      step.t = t;
      step.level = level;
      step.regularization = m_level;
      step.a = a;
      step.gamma = gamma;
      step.A_next = state.A;
      step.f_next = f_plus;
      step.phi_star_next = state.phi_star();
      step.x_next = state.x;
      step.v_next = state.v;
      emit(rec, AccelTraceExtra{state.A, a, gamma, (state.v - state.x0).norm(),
                                step.phi_star_next});
      result.steps.push_back(std::move(step));
      break;
    }
  }

  result.x = state.x;
  if (!g_x) g_x = oracle.gradient(state.x);
  result.final_grad_norm = g_x->norm();
  result.final_f = f_x ? *f_x : oracle.value(state.x) + composite.value(state.x);
  result.counters.calls = oracle.counts() - start_calls;
  return result;
}

}  // namespace tensoropt
