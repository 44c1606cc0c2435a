#include "spacings/log_prob.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using spacings::LogProb;

TEST(LogProbTest, ZeroIsExplicit) {
  EXPECT_TRUE(LogProb::zero().is_zero());
  EXPECT_TRUE(LogProb::from_prob(0.0).is_zero());
  EXPECT_FALSE(LogProb::from_prob(1e-300).is_zero());
  EXPECT_EQ(0.0, LogProb::zero().prob());
  EXPECT_EQ(1.0, LogProb::one().prob());
}

TEST(LogProbTest, SumMatchesLinearArithmetic) {
  const auto a = LogProb::from_prob(0.25);
  const auto b = LogProb::from_prob(0.125);
  EXPECT_NEAR(0.375, (a + b).prob(), 1e-16);
  EXPECT_EQ(a, a + LogProb::zero());
  EXPECT_EQ(b, LogProb::zero() + b);
  EXPECT_DOUBLE_EQ(1.0 / 32.0, (a * b).prob());
  EXPECT_TRUE((a * LogProb::zero()).is_zero());
}

TEST(LogProbTest, SumsFarBelowDoubleRange) {
  // e^-2000 + e^-2000 = 2 e^-2000
  const auto tiny = LogProb::from_log(-2000.0);
  EXPECT_NEAR(-2000.0 + std::log(2.0), (tiny + tiny).log(), 1e-12);
  std::vector<LogProb> many(1000, tiny);
  EXPECT_NEAR(-2000.0 + std::log(1000.0), spacings::log_sum(many).log(), 1e-10);
}

TEST(LogProbTest, ComplementAvoidsCancellation) {
  EXPECT_NEAR(1e-20, LogProb::from_log(std::log1p(-1e-20)).complement().prob(), 1e-30);
  EXPECT_NEAR(-1e-20, LogProb::from_prob(1e-20).complement().log(), 1e-30);
  EXPECT_NEAR(0.5, LogProb::from_prob(0.5).complement().prob(), 1e-16);
  EXPECT_TRUE(LogProb::one().complement().is_zero());
  EXPECT_EQ(LogProb::one(), LogProb::zero().complement());
}

TEST(LogProbTest, DivisionByZeroRejected) {
  EXPECT_THROW(LogProb::one() / LogProb::zero(), spacings::DomainError);
  EXPECT_THROW(LogProb::from_prob(1.5), spacings::DomainError);
}
