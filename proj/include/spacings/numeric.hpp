#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "log_prob.hpp"

namespace spacings::numeric {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;
inline constexpr double kLn2Pi = 1.837877066409345483560659472811;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// log((1-p)^k) with the convention 0^0 = 1.
inline double log_pow_q(std::int64_t k, double p) {
  if (k == 0) return 0.0;
  if (p == 1.0) return kNegInf;
  return static_cast<double>(k) * std::log1p(-p);
}

// log(p^k) with 0^0 = 1.
inline double log_pow_p(std::int64_t k, double p) {
  if (k == 0) return 0.0;
  if (p == 0.0) return kNegInf;
  return static_cast<double>(k) * std::log(p);
}

// Stirling-series remainder: log(n!) - log(sqrt(2 pi n) (n/e)^n), integer n.
inline double stirling_error(std::int64_t n) {
  static constexpr std::array<double, 16> kSmall = {
      0.0,
      0.0810614667953272582196702,
      0.0413406959554092940938221,
      0.02767792568499833914878929,
      0.02079067210376509311152277,
      0.01664469118982119216319487,
      0.01387612882307074799874573,
      0.01189670994589177009505572,
      0.01041126526197209649747856,
      0.009255462182712732917728637,
      0.008330563433362871256469318,
      0.007573675487951840794972024,
      0.006942840107209529865664152,
      0.006408994188004207068439631,
      0.005951370112758847735624416,
      0.005554733551962801371038690,
  };
  if (n < 16) return kSmall[static_cast<std::size_t>(n)];
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double x = static_cast<double>(n);
  const double xx = x * x;
  if (n > 500) return (s0 - s1 / xx) / x;
  if (n > 80) return (s0 - (s1 - s2 / xx) / xx) / x;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
  return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

// Deviance term x log(x/m) + m - x, accurate when x is close to m.
inline double binomial_deviance(double x, double m) {
  if (std::abs(x - m) < 0.1 * (x + m)) {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / static_cast<double>(2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / m) + m - x;
}

/// log P(Binomial(trials, p) = k).
///
/// Saddle-point evaluation (Loader's method): the large log-factorials of
/// the textbook formula never appear, so the result keeps full relative
/// precision for trials in the millions, where a log-gamma difference would
/// lose about nine digits.
inline double log_binomial_pmf(std::int64_t k, std::int64_t trials, double p) {
  if (k < 0 || k > trials) return kNegInf;
  const double q = 1.0 - p;
  if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return k == trials ? 0.0 : kNegInf;
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  const double x = static_cast<double>(k);
  if (k == 0) {
    return p < 0.1 ? -binomial_deviance(n, n * q) - n * p : n * std::log1p(-p);
  }
  if (k == trials) {
    return q < 0.1 ? -binomial_deviance(n, n * p) - n * q : n * std::log(p);
  }
  const double lc = stirling_error(trials) - stirling_error(k) - stirling_error(trials - k) -
                    binomial_deviance(x, n * p) - binomial_deviance(n - x, n * q);
  const double lf = kLn2Pi + std::log(x) + std::log1p(-x / n);
  return lc - 0.5 * lf;
}

/// log C(n, k). Short products are summed term by term; wide ones fall back
/// to log-gamma.
inline double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  k = std::min(k, n - k);
  if (k <= 64) {
    double acc = 0.0;
    for (std::int64_t m = 1; m <= k; ++m) {
      acc += std::log(static_cast<double>(n - k + m) / static_cast<double>(m));
    }
    return acc;
  }
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace spacings::numeric
