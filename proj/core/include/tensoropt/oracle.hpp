#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "tensoropt/linalg.hpp"

namespace tensoropt {

/// Entry points of a smooth oracle. Each invocation of any of them is one
/// oracle call.
enum class CallKind : std::size_t {
  Value = 0,
  Gradient,
  Hessian,
  ThirdDirectional,
  HessianTrace,
};

inline constexpr std::size_t kNumCallKinds = 5;

struct CallCounts {
  std::array<std::uint64_t, kNumCallKinds> by_kind{};

  std::uint64_t operator[](CallKind kind) const {
    return by_kind[static_cast<std::size_t>(kind)];
  }
  std::uint64_t total() const;

  CallCounts operator-(const CallCounts& other) const;
  bool operator==(const CallCounts&) const = default;
};

/// Thread-safe per-kind call counter.
class CallCounter {
 public:
  void add(CallKind kind, std::uint64_t n = 1) noexcept;
  CallCounts snapshot() const noexcept;
  void reset() noexcept;

 private:
  std::array<std::atomic<std::uint64_t>, kNumCallKinds> counts_{};
};

/// Smooth convex part f of a composite objective.
///
/// Public entry points validate dimensions and count calls, then dispatch to
/// the protected compute_* hooks. The third derivative is only ever exposed
/// through its directional action D^3 f(x)[h]^2.
class SmoothOracle {
 public:
  explicit SmoothOracle(Index dimension);
  virtual ~SmoothOracle() = default;

  SmoothOracle(const SmoothOracle&) = delete;
  SmoothOracle& operator=(const SmoothOracle&) = delete;

  Index dimension() const noexcept { return dimension_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;
  /// D^3 f(x)[h]^2, a vector of length n.
  Vector third_directional(const Vector& x, const Vector& h) const;
  double hessian_trace(const Vector& x) const;

  /// Lipschitz constant of D^3 f when the problem knows it.
  virtual std::optional<double> lipschitz_third() const { return std::nullopt; }

  virtual CallCounts counts() const { return counter_.snapshot(); }
  virtual void reset_counts() const { counter_.reset(); }

 protected:
  virtual double compute_value(const Vector& x) const = 0;
  virtual Vector compute_gradient(const Vector& x) const = 0;
  virtual Matrix compute_hessian(const Vector& x) const = 0;
  virtual Vector compute_third_directional(const Vector& x,
                                           const Vector& h) const = 0;
  /// Default materializes the Hessian; concrete problems override it.
  virtual double compute_hessian_trace(const Vector& x) const;

 private:
  void check_dimension(const Vector& v, const char* what) const;

  Index dimension_;
  mutable CallCounter counter_;
};

enum class CompositeKind { Zero, Custom };

/// Simple convex term psi of the composite objective f + psi.
class CompositeTerm {
 public:
  virtual ~CompositeTerm() = default;
  virtual CompositeKind kind() const = 0;
  /// psi(x); +infinity outside the domain.
  virtual double value(const Vector& x) const = 0;
  virtual bool in_domain(const Vector& x) const = 0;
};

class ZeroComposite final : public CompositeTerm {
 public:
  CompositeKind kind() const override { return CompositeKind::Zero; }
  double value(const Vector&) const override { return 0.0; }
  bool in_domain(const Vector&) const override { return true; }
};

/// Raised by solvers for composite kinds whose Bregman step is not shipped.
class UnsupportedComposite : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tensoropt
