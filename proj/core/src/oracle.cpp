#include "tensoropt/oracle.hpp"

#include <numeric>
#include <string>

namespace tensoropt {

std::uint64_t CallCounts::total() const {
  return std::accumulate(by_kind.begin(), by_kind.end(), std::uint64_t{0});
}

CallCounts CallCounts::operator-(const CallCounts& other) const {
  CallCounts out;
  for (std::size_t k = 0; k < kNumCallKinds; ++k) {
    out.by_kind[k] = by_kind[k] - other.by_kind[k];
  }
  return out;
}

void CallCounter::add(CallKind kind, std::uint64_t n) noexcept {
  counts_[static_cast<std::size_t>(kind)].fetch_add(n, std::memory_order_relaxed);
}

CallCounts CallCounter::snapshot() const noexcept {
  CallCounts out;
  for (std::size_t k = 0; k < kNumCallKinds; ++k) {
    out.by_kind[k] = counts_[k].load(std::memory_order_relaxed);
  }
  return out;
}

void CallCounter::reset() noexcept {
  for (auto& c : counts_) c.store(0, std::memory_order_relaxed);
}

SmoothOracle::SmoothOracle(Index dimension) : dimension_(dimension) {
  if (dimension <= 0) {
    throw std::invalid_argument("oracle dimension must be positive");
  }
}

void SmoothOracle::check_dimension(const Vector& v, const char* what) const {
  if (v.size() != dimension_) {
    throw std::invalid_argument(std::string(what) + " has dimension " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(dimension_));
  }
}

double SmoothOracle::value(const Vector& x) const {
  check_dimension(x, "x");
  counter_.add(CallKind::Value);
  return compute_value(x);
}

Vector SmoothOracle::gradient(const Vector& x) const {
  check_dimension(x, "x");
  counter_.add(CallKind::Gradient);
  return compute_gradient(x);
}

Matrix SmoothOracle::hessian(const Vector& x) const {
  check_dimension(x, "x");
  counter_.add(CallKind::Hessian);
  return compute_hessian(x);
}

Vector SmoothOracle::third_directional(const Vector& x, const Vector& h) const {
  check_dimension(x, "x");
  check_dimension(h, "h");
  counter_.add(CallKind::ThirdDirectional);
  return compute_third_directional(x, h);
}

double SmoothOracle::hessian_trace(const Vector& x) const {
  check_dimension(x, "x");
  counter_.add(CallKind::HessianTrace);
  return compute_hessian_trace(x);
}

double SmoothOracle::compute_hessian_trace(const Vector& x) const {
  return compute_hessian(x).trace();
}

}  // namespace tensoropt
