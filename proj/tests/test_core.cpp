#include <gtest/gtest.h>

#include <vector>

#include "robbins/core.hpp"
#include "robbins/exact_policy.hpp"

using namespace robbins;

namespace {

Policy stop_at_first_step(int n) { return Policy("always", n, [](int, HistoryView) { return 1.0; }); }

}  // namespace

TEST(Play, StopAtFirstStep) {
  const std::vector<double> seq{0.7, 0.1, 0.9};
  const auto r = play(stop_at_first_step(3), seq);
  EXPECT_EQ(r.index, 1);
  EXPECT_EQ(r.rank.value, 2);
}

TEST(Play, ExactThreeStepRule) {
  // h1 ~ 0.349 rejects 0.5; h(0.5) = 0.5 rejects 0.6; the last step is forced
  const std::vector<double> seq{0.5, 0.6, 0.2};
  const auto r = play(policy3(), seq);
  EXPECT_EQ(r.index, 3);
  EXPECT_EQ(r.rank.value, 1);
}

TEST(Play, RankCountsTiesAsWorse) {
  const std::vector<double> seq{0.3, 0.3, 0.1};
  EXPECT_EQ(overall_rank(seq, 0).value, 3);
  EXPECT_EQ(overall_rank(seq, 2).value, 1);
}

TEST(Play, RejectsBadInput) {
  const auto p = stop_at_first_step(3);
  EXPECT_THROW(play(p, std::vector<double>{0.1, 0.2}), input_error);
  EXPECT_THROW(play(p, std::vector<double>{0.1, 1.2, 0.3}), input_error);
  EXPECT_THROW(p.threshold(2, std::vector<double>{}), input_error);
  EXPECT_THROW(Policy("x", 0, [](int, HistoryView) { return 0.0; }), input_error);
}

TEST(Play, RandomSequencesStayInRange) {
  const auto p = policy4();
  for (std::uint64_t t = 0; t < 20000; ++t) {
    const auto seq = uniform_sequence(RandomStream(3, t), 4);
    const auto r = play(p, seq);
    ASSERT_GE(r.index, 1);
    ASSERT_LE(r.index, 4);
    ASSERT_GE(r.rank.value, 1);
    ASSERT_LE(r.rank.value, 4);
  }
}

TEST(Play, SuffixAfterStopIsIrrelevantToIndex) {
  const auto p = policy4();
  for (std::uint64_t t = 0; t < 5000; ++t) {
    auto seq = uniform_sequence(RandomStream(11, t), 4);
    const auto r = play(p, seq);
    auto changed = seq;
    for (std::size_t i = static_cast<std::size_t>(r.index); i < changed.size(); ++i)
      changed[i] = RandomStream(12, t).bits_at(i) % 2 ? 0.0 : 1.0;
    ASSERT_EQ(play(p, changed).index, r.index);
  }
}

TEST(Decide, MonotoneInObservation) {
  const auto p = policy4();
  const std::vector<double> hist{0.4, 0.7};
  bool stopped = false;
  for (int i = 0; i <= 1000; ++i) {
    const bool stop = p.decide(3, hist, 1.0 - i / 1000.0) == Decision::Stop;
    // walking x downward: once it stops, it keeps stopping
    if (stopped) ASSERT_TRUE(stop);
    stopped = stopped || stop;
  }
  EXPECT_TRUE(stopped);
}

TEST(RandomStream, Deterministic) {
  RandomStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_bits(), b.next_bits());
  EXPECT_EQ(RandomStream(42, 7).bits_at(500), a.bits_at(500));
}

TEST(RandomStream, StreamsDiffer) {
  const auto s0 = uniform_sequence(RandomStream(42, 0), 8);
  const auto s1 = uniform_sequence(RandomStream(42, 1), 8);
  const auto t0 = uniform_sequence(RandomStream(43, 0), 8);
  EXPECT_NE(s0, s1);
  EXPECT_NE(s0, t0);
}

TEST(RandomStream, UniformMean) {
  RandomStream s(2024, 0);
  double sum = 0.0;
  const int m = 1'000'000;
  for (int i = 0; i < m; ++i) {
    const double u = s.next_uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / m, 0.5, 0.002);
}
