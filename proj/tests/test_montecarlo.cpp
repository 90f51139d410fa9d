#include <gtest/gtest.h>

#include <numeric>

#include "robbins/exact_policy.hpp"
#include "robbins/memoryless.hpp"
#include "robbins/montecarlo.hpp"

using namespace robbins;

TEST(Simulate, StopFirstMeanRank) {
  const auto r = evaluate(stop_first_policy(4), 1'000'000, 1);
  EXPECT_LE(std::abs(r.mean - 2.5), 4 * r.std_error);
  EXPECT_EQ(r.trials, 1'000'000u);
  ASSERT_EQ(r.rank_counts.size(), 4u);
  EXPECT_EQ(std::accumulate(r.rank_counts.begin(), r.rank_counts.end(), std::uint64_t{0}), r.trials);
}

TEST(Simulate, IndependentOfWorkerCount) {
  const auto p = policy4();
  SimOptions one{1, 1000}, many{4, 1000}, big_chunks{3, 1u << 20};
  const auto a = evaluate(p, 300'001, 42, one);
  const auto b = evaluate(p, 300'001, 42, many);
  const auto c = evaluate(p, 300'001, 42, big_chunks);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.rank_counts, b.rank_counts);
  EXPECT_EQ(a.mean, c.mean);
  EXPECT_EQ(a.rank_counts, c.rank_counts);
}

TEST(Simulate, SeedMatters) {
  const auto p = policy4();
  EXPECT_NE(evaluate(p, 10'000, 1).mean, evaluate(p, 10'000, 2).mean);
}

TEST(Compare, IdenticalPoliciesPairExactly) {
  const auto r = compare({policy3(), policy3()}, 200'000, 5);
  ASSERT_EQ(r.results.size(), 2u);
  EXPECT_EQ(r.results[0].mean, r.results[1].mean);
  ASSERT_EQ(r.differences.size(), 1u);
  EXPECT_EQ(r.differences[0].mean, 0.0);
  EXPECT_EQ(r.differences[0].std_error, 0.0);
}

TEST(Compare, OptimalTwoStepBeatsOffThreshold) {
  const auto off = memoryless_policy(ThresholdVector({0.4, 1.0}));
  const auto r = compare({policy2(), off}, 1'000'000, 6);
  const auto& d = r.differences[0];
  // exact gap is g2(0.5) - g2(0.4) = -0.01
  EXPECT_LT(d.mean, 0.0);
  EXPECT_LE(std::abs(d.mean + 0.01), 4 * d.std_error);
}

TEST(Compare, ExactFourBeatsMemoryless) {
  const auto r = compare({policy4(), memoryless_policy(optimize(4).thresholds)}, 2'000'000, 8);
  const auto& d = r.differences[0];
  EXPECT_LT(d.mean + 4 * d.std_error, 0.0);
  EXPECT_LE(std::abs(-d.mean - 0.0132), 4 * d.std_error);
}

TEST(Compare, RejectsMismatchedHorizons) {
  EXPECT_THROW(compare({policy3(), policy4()}, 10, 1), input_error);
  EXPECT_THROW(compare({}, 10, 1), input_error);
}
