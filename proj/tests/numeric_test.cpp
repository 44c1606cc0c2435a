#include "spacings/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace num = spacings::numeric;

namespace {

long double exact_log_choose(long long n, long long k) {
  return std::lgammal(n + 1.0L) - std::lgammal(k + 1.0L) - std::lgammal(n - k + 1.0L);
}

}  // namespace

TEST(NumericTest, StirlingErrorTableMatchesDefinition) {
  for (int n = 1; n < 40; ++n) {
    const long double x = n;
    const long double expected = std::lgammal(x + 1.0L) - (x + 0.5L) * std::log(x) + x - 0.918938533204672741780329736406L;
    EXPECT_NEAR(static_cast<double>(expected), num::stirling_error(n), 1e-15) << n;
  }
}

TEST(NumericTest, BinomialPmfSmallTrials) {
  // P(Bin(3, 1/2) = 1) = 3/8
  EXPECT_NEAR(std::log(3.0 / 8.0), num::log_binomial_pmf(1, 3, 0.5), 1e-15);
  EXPECT_NEAR(3.0 * std::log(0.9), num::log_binomial_pmf(0, 3, 0.1), 1e-15);
  EXPECT_NEAR(3.0 * std::log(0.1), num::log_binomial_pmf(3, 3, 0.1), 1e-15);
  EXPECT_EQ(0.0, num::log_binomial_pmf(4, 4, 1.0));
  EXPECT_EQ(num::kNegInf, num::log_binomial_pmf(3, 4, 1.0));
  EXPECT_EQ(num::kNegInf, num::log_binomial_pmf(5, 4, 0.3));
  EXPECT_EQ(0.0, num::log_binomial_pmf(0, 0, 0.3));
}

TEST(NumericTest, BinomialPmfAgreesWithLongDoubleReference) {
  for (long long trials : {10LL, 37LL, 200LL, 5000LL}) {
    for (double p : {0.01, 0.1, 0.5, 0.9}) {
      for (long long k = 1; k < trials; k += std::max(1LL, trials / 17)) {
        const long double ref = exact_log_choose(trials, k) + k * std::log(static_cast<long double>(p)) +
                                (trials - k) * std::log1p(-static_cast<long double>(p));
        EXPECT_NEAR(static_cast<double>(ref), num::log_binomial_pmf(k, trials, p), 1e-11 * std::max(1.0L, std::fabs(ref)))
            << trials << " " << k << " " << p;
      }
    }
  }
}

TEST(NumericTest, BinomialPmfNormalizesAtMillionTrials) {
  num::CompensatedSum s;
  for (long long k = 0; k <= 1000001; ++k) {
    const double l = num::log_binomial_pmf(k, 1000001, 0.1);
    if (l > -800) s.add(std::exp(l));
  }
  EXPECT_NEAR(1.0, s.value(), 1e-13);
}

TEST(NumericTest, LogChooseExactForSmallArguments) {
  EXPECT_NEAR(std::log(10.0), num::log_choose(5, 2), 1e-15);
  EXPECT_EQ(0.0, num::log_choose(7, 0));
  EXPECT_EQ(0.0, num::log_choose(7, 7));
  EXPECT_EQ(num::kNegInf, num::log_choose(2, 3));
  EXPECT_NEAR(static_cast<double>(exact_log_choose(1000, 500)), num::log_choose(1000, 500), 1e-10);
}

TEST(NumericTest, PowConventions) {
  EXPECT_EQ(0.0, num::log_pow_q(0, 1.0));
  EXPECT_EQ(num::kNegInf, num::log_pow_q(2, 1.0));
  EXPECT_NEAR(3 * std::log(0.75), num::log_pow_q(3, 0.25), 1e-15);
}

TEST(NumericTest, CompensatedSumRecoversLostBits) {
  num::CompensatedSum s;
  s.add(1.0);
  for (int k = 0; k < 1000; ++k) s.add(1e-17);
  EXPECT_NEAR(1.0 + 1e-14, s.value(), 1e-17);
}
