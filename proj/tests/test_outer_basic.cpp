#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "tensoropt/outer_basic.hpp"
#include "tensoropt/problems.hpp"
#include "tensoropt/trace.hpp"
#include "test_support.hpp"

namespace tensoropt {
namespace {

TEST(InitialLevel, Examples) {
  EXPECT_EQ(initial_level(1.0, 1.0), 1);
  EXPECT_EQ(initial_level(2.0, 1.0), 0);
  EXPECT_EQ(initial_level(1.5, 1.0), 1);
  EXPECT_EQ(initial_level(0.3, 0.3), 1);
  EXPECT_EQ(initial_level(64.0, 1.0), 0);
  EXPECT_THROW(initial_level(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(initial_level(1.0, -1.0), std::invalid_argument);
}

TEST(InitialLevel, IsSmallestSatisfyingLevel) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(0.0, 12.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double m0 = std::exp2(uni(rng) - 6.0);
    const double mt = m0 * std::exp2(uni(rng));
    const int i = initial_level(mt, m0);
    EXPECT_GE(i, 0);
    EXPECT_GE(std::ldexp(mt, i), 2.0 * m0);
    if (i > 0) EXPECT_LT(std::ldexp(mt, i - 1), 2.0 * m0);
  }
}

TEST(AcceptTestBasic, Examples) {
  EXPECT_TRUE(accept_test_basic(3.0, 3.0, 0.0, 5.0));
  EXPECT_TRUE(accept_test_basic(3.0, 1.0, 0.0, 5.0));
  // rhs = 1 / (6 (1/216)^{1/3}) = 1: equality is accepted.
  EXPECT_TRUE(accept_test_basic(1.0, 0.0, 1.0, 1.0 / 216.0));
  EXPECT_FALSE(accept_test_basic(1.0, 1.0, 0.5, 1.0));
  EXPECT_FALSE(accept_test_basic(1.0, 0.1, 1.0, 1.0 / 216.0));
}

TEST(OuterOptions, Validation) {
  OuterOptions opt;
  EXPECT_NO_THROW(opt.validate());
  opt.m0 = 0.0;
  EXPECT_THROW(opt.validate(), std::invalid_argument);
  opt = OuterOptions{};
  opt.max_outer = 0;
  EXPECT_THROW(opt.validate(), std::invalid_argument);
}

TEST(RunBasic, StationaryStart) {
  const QuarticOracle oracle(3);
  OuterOptions opt;
  opt.epsilon = 1e-8;
  const SolveResult r = run_basic(oracle, ZeroComposite{}, Vector::Zero(3), opt);
  EXPECT_EQ(r.status, RunStatus::Converged);
  EXPECT_LE(r.counters.outer_iterations, 1);
  EXPECT_EQ(r.x.norm(), 0.0);
}

TEST(RunBasic, RejectsBadInputs) {
  const QuarticOracle oracle(3);
  EXPECT_THROW(run_basic(oracle, ZeroComposite{}, Vector::Zero(2), OuterOptions{}),
               std::invalid_argument);
}

TEST(RunBasic, OuterCapIsReported) {
  const QuarticOracle oracle(2);
  OuterOptions opt;
  opt.epsilon = 1e-10;
  opt.max_outer = 2;
  const SolveResult r = run_basic(oracle, ZeroComposite{}, Vector::Ones(2), opt);
  EXPECT_EQ(r.status, RunStatus::OuterCap);
  EXPECT_EQ(r.counters.outer_iterations, 2);
  EXPECT_GT(r.final_grad_norm, opt.epsilon);
}

TEST(RunBasic, InnerCapIsReported) {
  const QuarticOracle oracle(2);
  OuterOptions opt;
  opt.epsilon = 1e-10;
  opt.max_inner = 1;
  const SolveResult r = run_basic(oracle, ZeroComposite{}, Vector::Ones(2), opt);
  EXPECT_EQ(r.status, RunStatus::InnerCap);
  EXPECT_EQ(r.trials.back().stop_reason, StopReason::IterationCap);
}

struct QuarticCase {
  Index n;
  double m0;
  double epsilon;
};

class BasicQuarticRuns : public ::testing::TestWithParam<QuarticCase> {};

TEST_P(BasicQuarticRuns, TheoreticalGuarantees) {
  const QuarticCase c = GetParam();
  const QuarticOracle oracle(c.n);
  const double lf = 24.0;
  OuterOptions opt;
  opt.m0 = c.m0;
  opt.epsilon = c.epsilon;
  CollectingTraceSink trace;
  opt.trace = &trace;
  const SolveResult r = run_basic(oracle, ZeroComposite{}, Vector::Ones(c.n), opt);

  ASSERT_EQ(r.status, RunStatus::Converged);
  EXPECT_LE(r.final_grad_norm, c.epsilon);
  EXPECT_LE(oracle.gradient(r.x).norm(), c.epsilon);
  EXPECT_DOUBLE_EQ(r.final_f, oracle.value(r.x));

  const double m_cap = std::max(2.0 * c.m0, 4.0 * lf);
  for (double m : r.regularization_history) {
    EXPECT_GE(m, c.m0);
    EXPECT_LE(m, m_cap);
  }

  std::map<int, std::pair<int, int>> levels;  // t -> (first, last)
  int accepted = 0;
  int converged = 0;
  for (const TrialRecord& trial : r.trials) {
    if (trial.regularization >= 4.0 * lf) EXPECT_FALSE(trial.alpha);
    auto [it, fresh] = levels.try_emplace(trial.t, trial.level, trial.level);
    if (!fresh) {
      EXPECT_EQ(trial.level, it->second.second + 1);
      it->second.second = trial.level;
    }
    EXPECT_EQ(trial.base_regularization, r.regularization_history.at(trial.t));
    if (trial.accepted) {
      ++accepted;
      const double decrease = *trial.f_anchor_iterate - *trial.f_plus;
      const double rhs =
          std::pow(trial.grad_norm_plus, 4.0 / 3.0) / (6.0 * std::cbrt(trial.regularization));
      EXPECT_GE(decrease, rhs - 1e-12);
      EXPECT_LE(*trial.f_plus, *trial.f_anchor_iterate);
    }
    converged += trial.converged;
  }
  EXPECT_EQ(converged, 1);
  EXPECT_EQ(accepted + converged, r.counters.outer_iterations);

  // Executions per outer iteration: one per level tried.
  std::int64_t executions = 0;
  for (const auto& [t, range] : levels) {
    EXPECT_EQ(range.first, initial_level(r.regularization_history.at(t), c.m0));
    executions += range.second - range.first + 1;
  }
  EXPECT_EQ(executions, r.counters.inner_executions);
  EXPECT_EQ(static_cast<std::int64_t>(trace.outer_rows.size()), r.counters.inner_executions);

  std::int64_t inner_its = 0;
  for (const TrialRecord& trial : r.trials) inner_its += trial.inner_iterations;
  EXPECT_EQ(inner_its, r.counters.inner_iterations);
  EXPECT_EQ(static_cast<std::int64_t>(trace.inner_rows.size()), r.counters.inner_iterations);

  const double t_count = static_cast<double>(r.counters.outer_iterations);
  EXPECT_LE(static_cast<double>(r.counters.inner_executions),
            2.0 * (t_count + 1.0) + std::log2(m_cap) - std::log2(c.m0));
}

INSTANTIATE_TEST_SUITE_P(Quartic, BasicQuarticRuns,
                         ::testing::Values(QuarticCase{2, 1.0, 1e-8}, QuarticCase{10, 1.0, 1e-8},
                                           QuarticCase{3, 0.01, 1e-6},
                                           QuarticCase{4, 500.0, 1e-6}));

TEST(RunBasic, CallCountsMatchIndependentTally) {
  std::mt19937_64 rng(22);
  const LogisticOracle logistic(testing::random_dataset(rng, 30, 3));
  const testing::RecordingOracle recording(logistic);
  OuterOptions opt;
  opt.epsilon = 1e-7;
  const SolveResult r = run_basic(recording, ZeroComposite{}, Vector::Ones(4), opt);
  ASSERT_EQ(r.status, RunStatus::Converged);
  const auto tally = recording.recorded();
  for (std::size_t k = 0; k < kNumCallKinds; ++k) {
    EXPECT_EQ(r.counters.calls.by_kind[k], tally[k]) << "kind " << k;
  }
  EXPECT_EQ(r.counters.calls.total(), recording.recorded_total());
  // One third-derivative call per inner iteration, nothing else.
  EXPECT_EQ(r.counters.calls[CallKind::ThirdDirectional],
            static_cast<std::uint64_t>(r.counters.inner_iterations));
}

TEST(RunBasic, LogisticConvergesAcrossStarts) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const LogisticOracle oracle(testing::random_dataset(rng, 40, 3));
    OuterOptions opt;
    opt.epsilon = 1e-6;
    const Vector x0 = testing::random_vector(rng, 4);
    const SolveResult r = run_basic(oracle, ZeroComposite{}, x0, opt);
    ASSERT_EQ(r.status, RunStatus::Converged);
    EXPECT_LE(oracle.gradient(r.x).norm(), 1e-6);
    EXPECT_LE(r.final_f, oracle.value(x0));
  }
}

}  // namespace
}  // namespace tensoropt
