#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>
#include <random>
#include <thread>
#include <vector>

#include "tensoropt/finite_difference.hpp"
#include "tensoropt/oracle.hpp"
#include "tensoropt/problems.hpp"
#include "test_support.hpp"

namespace tensoropt {
namespace {

using testing::random_dataset;
using testing::random_vector;

TEST(Dataset, RejectsBadIntercept) {
  Matrix a(2, 2);
  a << 1, 0.5, 2, 0.5;
  EXPECT_THROW(Dataset(a, Vector::Ones(2)), std::invalid_argument);
}

TEST(Dataset, RejectsNonBinaryLabels) {
  Vector labels(2);
  labels << 0, 0.5;
  EXPECT_THROW(Dataset::with_intercept(Matrix::Ones(2, 1), labels), std::invalid_argument);
}

TEST(LogisticOracle, ValueAtOriginIsMLog2) {
  std::mt19937_64 rng(1);
  const LogisticOracle oracle(random_dataset(rng, 13, 3));
  EXPECT_NEAR(oracle.value(Vector::Zero(4)), 13.0 * std::log(2.0), 1e-12);
}

TEST(LogisticOracle, ThirdDerivativeVanishesAtOrigin) {
  std::mt19937_64 rng(2);
  const LogisticOracle oracle(random_dataset(rng, 9, 2));
  for (int trial = 0; trial < 5; ++trial) {
    const Vector h = random_vector(rng, 3);
    EXPECT_LE(oracle.third_directional(Vector::Zero(3), h).norm(), 1e-15);
  }
}

TEST(LogisticOracle, SingleSampleHandValues) {
  // a = (1), b = 1, x = 0: s = 1/2 so grad = s - b = -1/2, hess = s(1 - s) = 1/4.
  const LogisticOracle oracle(Dataset(Matrix::Ones(1, 1), Vector::Ones(1)));
  const Vector x = Vector::Zero(1);
  EXPECT_DOUBLE_EQ(oracle.gradient(x)(0), -0.5);
  EXPECT_DOUBLE_EQ(oracle.hessian(x)(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(oracle.third_directional(x, Vector::Ones(1))(0), 0.0);

  // Central differences of f confirm the first two.
  const double step = 1e-4;
  const Vector e = Vector::Constant(1, step);
  const double fd_grad = (oracle.value(x + e) - oracle.value(x - e)) / (2 * step);
  const double fd_hess =
      (oracle.value(x + e) - 2 * oracle.value(x) + oracle.value(x - e)) / (step * step);
  EXPECT_NEAR(fd_grad, -0.5, 1e-8);
  EXPECT_NEAR(fd_hess, 0.25, 1e-6);
}

TEST(LogisticOracle, StableForLargeMargins) {
  Matrix raw(2, 1);
  raw << 1000.0, -1000.0;
  Vector labels(2);
  labels << 1.0, 0.0;
  const LogisticOracle oracle(Dataset::with_intercept(raw, labels));
  const Vector x = Vector::Ones(2);
  EXPECT_TRUE(std::isfinite(oracle.value(x)));
  EXPECT_TRUE(oracle.gradient(x).allFinite());
  EXPECT_TRUE(oracle.hessian(x).allFinite());
}

TEST(LogisticOracle, DimensionMismatchThrows) {
  std::mt19937_64 rng(3);
  const LogisticOracle oracle(random_dataset(rng, 5, 2));
  EXPECT_THROW(oracle.value(Vector::Zero(2)), std::invalid_argument);
  EXPECT_THROW(oracle.third_directional(Vector::Zero(3), Vector::Zero(4)),
               std::invalid_argument);
}

TEST(QuarticOracle, MinimizerAndThirdDerivative) {
  const QuarticOracle oracle(3);
  EXPECT_EQ(oracle.value(Vector::Zero(3)), 0.0);
  EXPECT_EQ(oracle.gradient(Vector::Zero(3)).norm(), 0.0);
  const QuarticOracle one(1);
  EXPECT_DOUBLE_EQ(one.third_directional(Vector::Ones(1), Vector::Ones(1))(0), 24.0);
  EXPECT_EQ(oracle.lipschitz_third(), 24.0);
}

TEST(QuarticOracle, ThirdDerivativeIsLipschitz) {
  // Diagonal tensor with entries 24 x_i: the operator-norm difference is
  // max_i 24 |x_i - y_i| <= 24 ||x - y||. Check the directional form.
  std::mt19937_64 rng(4);
  const QuarticOracle oracle(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = random_vector(rng, 4);
    const Vector y = random_vector(rng, 4);
    Vector h = random_vector(rng, 4);
    h.normalize();
    const double diff =
        (oracle.third_directional(x, h) - oracle.third_directional(y, h)).norm();
    EXPECT_LE(diff, 24.0 * (x - y).norm() + 1e-12);
  }
}

// Properties shared by every shipped oracle.
class ShippedOracles : public ::testing::TestWithParam<int> {
 protected:
  std::unique_ptr<SmoothOracle> make(std::mt19937_64& rng) const {
    if (GetParam() == 0) return std::make_unique<QuarticOracle>(5);
    return std::make_unique<LogisticOracle>(random_dataset(rng, 20, 4));
  }
};

TEST_P(ShippedOracles, ThirdDirectionalIsQuadraticallyHomogeneous) {
  std::mt19937_64 rng(10 + GetParam());
  const auto oracle = make(rng);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = random_vector(rng, oracle->dimension());
    const Vector h = random_vector(rng, oracle->dimension());
    const Vector t1 = oracle->third_directional(x, h);
    const Vector t2 = oracle->third_directional(x, 2.0 * h);
    EXPECT_LE((t2 - 4.0 * t1).norm(), 1e-12 * (1.0 + 4.0 * t1.norm()));
  }
}

TEST_P(ShippedOracles, HessianSymmetricPsdAndTraceConsistent) {
  std::mt19937_64 rng(20 + GetParam());
  const auto oracle = make(rng);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = random_vector(rng, oracle->dimension(), 2.0);
    const Matrix h = oracle->hessian(x);
    const double scale = h.cwiseAbs().maxCoeff();
    EXPECT_LE((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-12 * (1.0 + scale));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10);
    const double trace = oracle->hessian_trace(x);
    EXPECT_LE(std::abs(trace - h.trace()), 1e-12 * std::max(1.0, std::abs(trace)));
  }
}

TEST_P(ShippedOracles, DerivativeCheckPasses) {
  std::mt19937_64 rng(30 + GetParam());
  const auto oracle = make(rng);
  const DerivativeReport report =
      check_derivatives(*oracle, random_vector(rng, oracle->dimension()), 1e-5);
  EXPECT_TRUE(report.passed()) << report.gradient_error << " " << report.hessian_error
                               << " " << report.third_error;
}

TEST_P(ShippedOracles, EachEntryPointCountsOnce) {
  std::mt19937_64 rng(40 + GetParam());
  const auto oracle = make(rng);
  const Vector x = random_vector(rng, oracle->dimension());
  oracle->reset_counts();
  oracle->value(x);
  oracle->gradient(x);
  oracle->gradient(x);
  oracle->hessian(x);
  oracle->third_directional(x, x);
  oracle->hessian_trace(x);
  const CallCounts c = oracle->counts();
  EXPECT_EQ(c[CallKind::Value], 1u);
  EXPECT_EQ(c[CallKind::Gradient], 2u);
  EXPECT_EQ(c[CallKind::Hessian], 1u);
  EXPECT_EQ(c[CallKind::ThirdDirectional], 1u);
  EXPECT_EQ(c[CallKind::HessianTrace], 1u);
  EXPECT_EQ(c.total(), 6u);
}

INSTANTIATE_TEST_SUITE_P(Oracles, ShippedOracles, ::testing::Values(0, 1));

TEST(CallCounter, ConcurrentIncrementsAreNotLost) {
  const QuarticOracle oracle(3);
  const Vector x = Vector::Ones(3);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 2500; ++i) oracle.gradient(x);
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(oracle.counts()[CallKind::Gradient], 10000u);
}

class CorruptedGradient final : public SmoothOracle {
 public:
  CorruptedGradient() : SmoothOracle(3) {}

 protected:
  double compute_value(const Vector& x) const override { return base_.value(x); }
  Vector compute_gradient(const Vector& x) const override {
    Vector g = base_.gradient(x);
    g(1) += 0.1;
    return g;
  }
  Matrix compute_hessian(const Vector& x) const override { return base_.hessian(x); }
  Vector compute_third_directional(const Vector& x, const Vector& h) const override {
    return base_.third_directional(x, h);
  }

 private:
  QuarticOracle base_{3};
};

TEST(CheckDerivatives, FlagsCorruptedGradient) {
  const CorruptedGradient oracle;
  const DerivativeReport report = check_derivatives(oracle, Vector::Ones(3), 1e-5);
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(report.gradient_ok());
  // Hessian and third derivative are differences of the (shifted) gradient.
  EXPECT_TRUE(report.hessian_ok());
  EXPECT_TRUE(report.third_ok());
}

TEST(FiniteDifference, QuadraticHasZeroThirdDifference) {
  std::mt19937_64 rng(5);
  const testing::QuadraticOracle oracle(testing::random_psd(rng, 4, 4), random_vector(rng, 4));
  for (double tau : {1e-1, 1e-2, 1.0}) {
    const Vector t = fd_third_directional(oracle, random_vector(rng, 4),
                                          random_vector(rng, 4), tau);
    EXPECT_LE(t.norm(), 1e-10);
  }
}

TEST(FiniteDifference, QuarticErrorWithinBound) {
  const QuarticOracle oracle(1);
  const Vector one = Vector::Ones(1);
  const double t = fd_third_directional(oracle, one, one, 0.1)(0);
  EXPECT_LE(std::abs(t - 24.0), 24.0 / 3.0 * 0.1);
}

TEST(FiniteDifference, RejectsNonpositiveTau) {
  const QuarticOracle oracle(2);
  EXPECT_THROW(fd_third_directional(oracle, Vector::Ones(2), Vector::Ones(2), 0.0),
               std::invalid_argument);
  auto shared = std::make_shared<QuarticOracle>(2);
  EXPECT_THROW(FiniteDifferenceOracle(shared, -1.0), std::invalid_argument);
}

TEST(FiniteDifference, LogisticErrorShrinksWithTau) {
  std::mt19937_64 rng(6);
  const LogisticOracle oracle(random_dataset(rng, 30, 3));
  const Vector x = random_vector(rng, 4, 0.5);
  const Vector h = random_vector(rng, 4);
  const Vector exact = oracle.third_directional(x, h);
  double previous = std::numeric_limits<double>::infinity();
  for (double tau : {1e-1, 1e-2, 1e-3}) {
    const double err = (fd_third_directional(oracle, x, h, tau) - exact).norm();
    EXPECT_LT(err, previous);
    // At least first-order decrease: a tenfold smaller tau cuts the error tenfold.
    if (std::isfinite(previous)) {
      EXPECT_LE(err, 0.1 * previous * 1.01);
    }
    previous = err;
  }
}

TEST(FiniteDifferenceOracle, ChargesThreeGradientCalls) {
  auto inner = std::make_shared<QuarticOracle>(2);
  const FiniteDifferenceOracle oracle(inner, 1e-3);
  const Vector x = Vector::Ones(2);
  oracle.third_directional(x, x);
  const CallCounts c = oracle.counts();
  EXPECT_EQ(c[CallKind::Gradient], 3u);
  EXPECT_EQ(c[CallKind::ThirdDirectional], 0u);
  EXPECT_EQ(c.total(), 3u);
  oracle.hessian(x);
  EXPECT_EQ(oracle.counts()[CallKind::Hessian], 1u);
}

}  // namespace
}  // namespace tensoropt
