#include "spacings/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "spacings/core_dist.hpp"
#include "spacings/diagnostics.hpp"

using spacings::RngSeed;

TEST(SampleSubsetTest, FullSurvival) {
  const auto run = spacings::sample_subset(spacings::grid(8), 1.0, RngSeed{3});
  EXPECT_EQ(9u, run.survivors.size());
  ASSERT_EQ(8u, run.spacings.size());
  for (double s : run.spacings) EXPECT_NEAR(0.125, s, 1e-15);
}

TEST(SampleSubsetTest, SameSeedSamePattern) {
  const auto points = spacings::grid(2);
  const auto a = spacings::sample_subset(points, 0.5, RngSeed{99});
  const auto b = spacings::sample_subset(points, 0.5, RngSeed{99});
  EXPECT_EQ(a.survivors, b.survivors);
  EXPECT_EQ(a.spacings, b.spacings);

  const auto big = spacings::grid(5000);
  EXPECT_EQ(spacings::sample_subset(big, 0.3, RngSeed{1}).survivors,
            spacings::sample_subset(big, 0.3, RngSeed{1}).survivors);
  EXPECT_NE(spacings::sample_subset(big, 0.3, RngSeed{1}).survivors,
            spacings::sample_subset(big, 0.3, RngSeed{2}).survivors);
}

TEST(SampleSubsetTest, SpacingsSumToSurvivorRange) {
  const auto points = spacings::farey(40);
  const auto run = spacings::sample_subset(points, 0.2, RngSeed{5});
  ASSERT_GT(run.survivors.size(), 2u);
  EXPECT_EQ(run.survivors.size() - 1, run.spacings.size());
  double sum = 0.0;
  for (double s : run.spacings) {
    EXPECT_GT(s, 0.0);
    sum += s;
  }
  EXPECT_NEAR(points.points[run.survivors.back()] - points.points[run.survivors.front()], sum, 1e-12);
}

TEST(SampleSubsetTest, SurvivorCountMean) {
  const auto points = spacings::grid(10);
  constexpr int kSeeds = 100000;
  double total = 0.0;
  for (int s = 0; s < kSeeds; ++s) total += spacings::sample_subset(points, 0.3, RngSeed{static_cast<std::uint64_t>(s)}).survivors.size();
  const double mean = total / kSeeds;
  const double se = std::sqrt(11 * 0.3 * 0.7 / kSeeds);
  EXPECT_NEAR(3.3, mean, 3 * se);
}

TEST(SampleSubsetTest, RejectsBadProbability) {
  EXPECT_THROW(spacings::sample_subset(spacings::grid(3), 0.0, RngSeed{}), spacings::DomainError);
}

TEST(IthScaledSpacingTest, Examples) {
  const auto g = spacings::grid(10);
  const auto run = spacings::SampleRun::from_survivors(g, {0, 3, 7}, 0.5, RngSeed{});
  EXPECT_EQ(3, spacings::ith_scaled_spacing(run, 1, 10));
  EXPECT_EQ(4, spacings::ith_scaled_spacing(run, 2, 10));
  EXPECT_FALSE(spacings::ith_scaled_spacing(run, 3, 10).has_value());
  const auto run2 = spacings::SampleRun::from_survivors(g, {2, 4}, 0.5, RngSeed{});
  EXPECT_EQ(2, spacings::ith_scaled_spacing(run2, 1, 10));
  const auto lonely = spacings::SampleRun::from_survivors(g, {6}, 0.5, RngSeed{});
  EXPECT_TRUE(lonely.spacings.empty());
  EXPECT_FALSE(spacings::ith_scaled_spacing(lonely, 1, 10).has_value());
}

TEST(CollectEmpiricalTest, SmallGridMatchesExactMass) {
  const auto emp = spacings::collect_empirical(2, 0.5, 1, 1000000, RngSeed{42});
  EXPECT_EQ(1000000u, emp.total + emp.discarded);
  EXPECT_NEAR(0.75, emp.mass(1), 0.005);
  EXPECT_NEAR(0.25, emp.mass(2), 0.005);
}

TEST(CollectEmpiricalTest, CertainSurvival) {
  const auto emp = spacings::collect_empirical(37, 1.0, 1, 10, RngSeed{1});
  EXPECT_EQ(10u, emp.total);
  EXPECT_EQ(0u, emp.discarded);
  EXPECT_EQ(1.0, emp.mass(1));
}

TEST(CollectEmpiricalTest, IndependentOfThreadCount) {
  const auto a = spacings::collect_empirical(500, 0.1, 2, 100000, RngSeed{11}, 1);
  const auto b = spacings::collect_empirical(500, 0.1, 2, 100000, RngSeed{11}, 4);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.discarded, b.discarded);
}

TEST(CollectEmpiricalTest, ConditioningRateMatchesSizeTail) {
  constexpr std::uint64_t kTrials = 1000000;
  for (int i : {1, 2}) {
    const auto emp = spacings::collect_empirical(10, 0.1, i, kTrials, RngSeed{2024});
    const double expected = spacings::size_tail(10, 0.1, i).prob();
    const double se = std::sqrt(expected * (1 - expected) / kTrials);
    EXPECT_NEAR(expected, static_cast<double>(emp.total) / kTrials, 4 * se) << i;
  }
}

TEST(InterArrivalTest, DegenerateProcess) {
  EXPECT_EQ((std::vector<std::int64_t>{1, 1, 1, 1, 1}), spacings::inter_arrival_stream(1.0, RngSeed{8}, 5));
  EXPECT_THROW(spacings::inter_arrival_stream(0.5, RngSeed{8}, 0), spacings::DomainError);
}

TEST(InterArrivalTest, MeanIsOneOverP) {
  constexpr int kDraws = 1000000;
  const auto ms = spacings::inter_arrival_stream(0.5, RngSeed{17}, kDraws);
  double sum = 0.0;
  for (auto m : ms) {
    ASSERT_GE(m, 1);
    sum += m;
  }
  const double se = std::sqrt(0.5) / 0.5 / std::sqrt(static_cast<double>(kDraws));
  EXPECT_NEAR(2.0, sum / kDraws, 3 * se);
}

TEST(InterArrivalTest, ConsecutiveGapsUncorrelated) {
  constexpr int kPairs = 1000000;
  const auto ms = spacings::inter_arrival_stream(0.1, RngSeed{23}, 2 * kPairs);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int k = 0; k < kPairs; ++k) {
    const double x = ms[2 * k];
    const double y = ms[2 * k + 1];
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / kPairs - (sx / kPairs) * (sy / kPairs);
  const double vx = sxx / kPairs - (sx / kPairs) * (sx / kPairs);
  const double vy = syy / kPairs - (sy / kPairs) * (sy / kPairs);
  EXPECT_LT(std::abs(cov / std::sqrt(vx * vy)), 0.01);
}

TEST(InterArrivalTest, GridSpacingMatchesSecondInterArrival) {
  constexpr std::uint64_t kDraws = 1000000;
  const auto grid_view = spacings::collect_empirical(10000, 0.3, 1, kDraws, RngSeed{5});
  const auto ms = spacings::inter_arrival_stream(0.3, RngSeed{6}, 2 * kDraws);
  spacings::EmpiricalDistribution process_view;
  for (std::uint64_t k = 0; k < kDraws; ++k) process_view.add(ms[2 * k + 1]);
  const auto report = spacings::diagnostics::compare_empirical(grid_view, process_view);
  EXPECT_LT(report.tv, 0.01);
}
