#include <benchmark/benchmark.h>

#include <random>

#include "tensoropt/inner_solver.hpp"
#include "tensoropt/model.hpp"
#include "tensoropt/outer_accel.hpp"
#include "tensoropt/outer_basic.hpp"
#include "tensoropt/problems.hpp"

namespace {

using namespace tensoropt;

Vector normal_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Dataset make_dataset(Index m, Index p) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  Matrix raw(m, p);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < p; ++j) raw(i, j) = normal(rng);
  Vector labels(m);
  for (Index i = 0; i < m; ++i) labels(i) = (raw(i, 0) + 0.5 * normal(rng) > 0) ? 1.0 : 0.0;
  return Dataset::with_intercept(raw, std::move(labels));
}

void BM_SecularSolve(benchmark::State& state) {
  const Index n = state.range(0);
  std::mt19937_64 rng(1);
  Matrix b(n, n);
  for (Index i = 0; i < n; ++i) b.row(i) = normal_vector(rng, n).transpose();
  const SpectralFactor spectrum = factor_psd(b * b.transpose());
  const Vector c = normal_vector(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(secular_solve(spectrum, 3.0, c, 1e-12));
}
BENCHMARK(BM_SecularSolve)->Arg(10)->Arg(100)->Arg(400);

void BM_LogisticThirdDirectional(benchmark::State& state) {
  const LogisticOracle oracle(make_dataset(state.range(0), 20));
  std::mt19937_64 rng(2);
  const Vector x = normal_vector(rng, 21);
  const Vector h = normal_vector(rng, 21);
  for (auto _ : state) benchmark::DoNotOptimize(oracle.third_directional(x, h));
}
BENCHMARK(BM_LogisticThirdDirectional)->Arg(1000)->Arg(10000);

void BM_LogisticHessian(benchmark::State& state) {
  const LogisticOracle oracle(make_dataset(state.range(0), 20));
  std::mt19937_64 rng(3);
  const Vector x = normal_vector(rng, 21);
  for (auto _ : state) benchmark::DoNotOptimize(oracle.hessian(x));
}
BENCHMARK(BM_LogisticHessian)->Arg(1000)->Arg(10000);

void BM_RunInner(benchmark::State& state) {
  const LogisticOracle oracle(make_dataset(2000, 20));
  const ModelAnchor anchor = ModelAnchor::evaluate(oracle, Vector::Ones(21), 8.0);
  InnerConfig cfg;
  cfg.epsilon = 1e-8;
  const double g = anchor.gradient().norm();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_inner(anchor, oracle, ZeroComposite{}, cfg, g));
  }
}
BENCHMARK(BM_RunInner);

template <bool Accelerated>
void BM_SolveLogistic(benchmark::State& state) {
  const LogisticOracle oracle(make_dataset(500, 10));
  OuterOptions opt;
  opt.epsilon = 1e-6;
  for (auto _ : state) {
    if constexpr (Accelerated) {
      benchmark::DoNotOptimize(run_accel(oracle, ZeroComposite{}, Vector::Ones(11), opt));
    } else {
      benchmark::DoNotOptimize(run_basic(oracle, ZeroComposite{}, Vector::Ones(11), opt));
    }
  }
}
BENCHMARK(BM_SolveLogistic<false>)->Name("BM_SolveLogistic/basic")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveLogistic<true>)->Name("BM_SolveLogistic/accel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
