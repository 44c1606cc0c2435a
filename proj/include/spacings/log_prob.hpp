#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "errors.hpp"

namespace spacings {

/// A probability stored as its natural logarithm.
///
/// Probability zero is represented by a log value of -infinity and is
/// queried explicitly with is_zero(). Products add logs; sums go through
/// log-sum-exp, so values far below the double range (e.g. 0.9^50001)
/// stay representable.
class LogProb {
 public:
  constexpr LogProb() = default;

  static constexpr LogProb zero() { return LogProb{}; }
  static constexpr LogProb one() { return from_log(0.0); }

  static constexpr LogProb from_log(double log_value) {
    LogProb r;
    r.log_ = log_value;
    return r;
  }

  static LogProb from_prob(double prob) {
    detail::require(prob >= 0.0 && prob <= 1.0, "probability must lie in [0, 1]");
    return prob == 0.0 ? zero() : from_log(std::log(prob));
  }

  constexpr bool is_zero() const { return log_ == -std::numeric_limits<double>::infinity(); }
  constexpr double log() const { return log_; }
  double prob() const { return is_zero() ? 0.0 : std::exp(log_); }

  friend LogProb operator*(LogProb a, LogProb b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.log_ + b.log_);
  }

  friend LogProb operator/(LogProb a, LogProb b) {
    detail::require(!b.is_zero(), "division by a zero probability");
    if (a.is_zero()) return zero();
    return from_log(a.log_ - b.log_);
  }

  // log(e^a + e^b) without leaving the log domain.
  friend LogProb operator+(LogProb a, LogProb b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.log_, b.log_);
    const double lo = std::min(a.log_, b.log_);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  LogProb& operator+=(LogProb other) { return *this = *this + other; }
  LogProb& operator*=(LogProb other) { return *this = *this * other; }

  // 1 - P, evaluated without cancellation on either side of 1/2.
  LogProb complement() const {
    if (is_zero()) return one();
    if (log_ >= 0.0) return zero();
    if (log_ > -M_LN2) return from_log(std::log(-std::expm1(log_)));
    return from_log(std::log1p(-std::exp(log_)));
  }

  friend constexpr bool operator==(LogProb a, LogProb b) { return a.log_ == b.log_; }
  friend constexpr bool operator<(LogProb a, LogProb b) { return a.log_ < b.log_; }

 private:
  double log_ = -std::numeric_limits<double>::infinity();
};

// log-sum-exp over a whole range, factoring out the maximum once.
inline LogProb log_sum(std::span<const LogProb> terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) hi = std::max(hi, t.log());
  if (hi == -std::numeric_limits<double>::infinity()) return LogProb::zero();
  double acc = 0.0;
  for (const auto& t : terms) {
    if (!t.is_zero()) acc += std::exp(t.log() - hi);
  }
  return LogProb::from_log(hi + std::log(acc));
}

}  // namespace spacings
