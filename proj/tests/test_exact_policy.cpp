#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "robbins/dp_oracle.hpp"
#include "robbins/exact_policy.hpp"
#include "robbins/verify.hpp"

using namespace robbins;

namespace {

// Monte Carlo of the finite-horizon rank with the first observations pinned.
// rule(k, hist, x) decides at free step k; the last step is forced.
template <class Rule>
double pinned_mean(std::vector<double> fixed, int n, Rule rule, std::uint64_t trials, double* se) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = 0, ss = 0;
  std::vector<double> x(static_cast<std::size_t>(n));
  const std::size_t f = fixed.size();
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < f; ++i) x[i] = fixed[i];
    for (std::size_t i = f; i < x.size(); ++i) x[i] = u(gen);
    std::size_t stop = x.size() - 1;
    for (std::size_t k = f; k + 1 < x.size(); ++k)
      if (rule(k + 1, x, x[k])) {
        stop = k;
        break;
      }
    double r = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != stop && x[i] <= x[stop]) r += 1;
    s += r;
    ss += r * r;
  }
  const double m = s / trials;
  *se = std::sqrt((ss / trials - m * m) / trials);
  return m;
}

}  // namespace

TEST(TwoStep, Objective) {
  EXPECT_NEAR(g2(0.5), 1.25, 1e-15);
  EXPECT_NEAR(g2(0.0), 1.5, 1e-15);
  EXPECT_NEAR(g2(1.0), 1.5, 1e-15);
  const auto p = policy2();
  EXPECT_DOUBLE_EQ(p.threshold(1, {}), 0.5);
}

TEST(ThreeStep, Objective) {
  EXPECT_NEAR(g3(0.4, 0.4), 1.62, 1e-12);
  double se = 0;
  const double mc = pinned_mean({0.4}, 3, [](std::size_t, const std::vector<double>&, double x) { return x <= 0.4; },
                                2'000'000, &se);
  EXPECT_LE(std::abs(mc - 1.62), 4 * se);
}

TEST(ThreeStep, Constants) {
  const auto c = constants3();
  EXPECT_NEAR(c.a, (5.0 - std::sqrt(13.0)) / 4.0, 1e-15);
  EXPECT_NEAR(c.v3, 1.39155, 5e-6);
}

TEST(ThreeStep, ArgminMatchesGrid) {
  for (int i = 0; i <= 1000; ++i) {
    const double x1 = i / 1000.0;
    const double grid = verify::grid_argmin([&](double h) { return g3(x1, h); }, 100001);
    ASSERT_NEAR(argmin_g3(x1), grid, 2e-5) << "x1=" << x1;
  }
}

TEST(FourStep, Objective) {
  // components: 1.5 + 0.140625 - 0.375 + 1.75*0.625 + 0.275 + 0.225
  EXPECT_NEAR(g4(0.1, 0.15, 0.375), 2.859375, 1e-12);
  double se = 0;
  const double mc = pinned_mean({0.1, 0.15}, 4,
                                [](std::size_t, const std::vector<double>&, double x) { return x <= 0.375; },
                                2'000'000, &se);
  EXPECT_LE(std::abs(mc - 2.859375), 4 * se);
  EXPECT_NEAR(g4(0.5, 0.9, 0.5), 1.55, 1e-12);
  EXPECT_NEAR(g4(0.5, 0.9, 0.9), 1.87, 1e-12);
}

TEST(FourStep, RegionExamples) {
  EXPECT_EQ(classify_region(0.1, 0.15), Region::B3);
  EXPECT_NEAR(h3(0.1, 0.15), 0.375, 1e-15);
  EXPECT_EQ(classify_region(0.9, 0.95), Region::B1);
  EXPECT_NEAR(h3(0.9, 0.95), 0.575, 1e-15);
  EXPECT_EQ(classify_region(0.5, 0.9), Region::A1);
  EXPECT_NEAR(h3(0.5, 0.9), 0.5, 1e-15);
}

TEST(FourStep, H3Symmetric) {
  RandomStream rs(8, 0);
  for (int i = 0; i < 100000; ++i) {
    const double a = rs.next_uniform(), b = rs.next_uniform();
    ASSERT_EQ(h3(a, b), h3(b, a));
    ASSERT_EQ(h3_from_region(classify_region(a, b), a, b), h3(a, b));
  }
}

TEST(FourStep, H3MatchesGridArgmin) {
  RandomStream rs(9, 0);
  for (int i = 0; i < 10000; ++i) {
    const double a = rs.next_uniform(), b = rs.next_uniform();
    const double grid = verify::grid_argmin([&](double h) { return g4(a, b, h); }, 100001);
    ASSERT_NEAR(h3(a, b), grid, 1e-4) << a << ", " << b;
  }
}

TEST(FourStep, Betas) {
  const auto be = betas();
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(be.b[i], verify::kBetaDecimals[i], 5e-6);
    // the reference decimals are truncated, not rounded
  EXPECT_NEAR(h1_constant4(), 0.27502, 1e-5);
}

TEST(FourStep, H2Values) {
  const double a = constants3().a;
  EXPECT_NEAR(h2(0.0), a, 1e-12);
  EXPECT_NEAR(h2(1.0), a, 1e-12);
  EXPECT_NEAR(h2(0.3), 0.3, 1e-15);
  const auto be = betas();
  EXPECT_NEAR(h2(be.b[1]), be.b[1], 1e-12);
  EXPECT_NEAR(h2(be.b[2]), be.b[2], 1e-12);
}

TEST(FourStep, H2ContinuousAndSmooth) {
  const auto& c = h2_curve();
  EXPECT_LT(verify::max_breakpoint_jump(c), 1e-10);
  for (std::size_t i : {1u, 4u, 5u}) EXPECT_LT(verify::derivative_mismatch(c, i), 1e-5) << "beta" << i;
  // beta2 and beta3 are genuine kinks
  EXPECT_GT(verify::derivative_mismatch(c, 2), 0.1);
  EXPECT_GT(verify::derivative_mismatch(c, 3), 0.1);
}

TEST(FourStep, H2ContinuityFailsWhenBreakpointMoves) {
  auto be = betas();
  be.b[1] += 1e-3;  // a kink, so the jump is first order
  EXPECT_GT(verify::max_breakpoint_jump(h2_curve(be)), 1e-6);
}

TEST(FourStep, H2AgreesWithOracle) {
  RandomStream rs(10, 0);
  for (int i = 0; i < 200; ++i) {
    const double x1 = rs.next_uniform();
    const std::vector<double> hist{x1};
    ASSERT_NEAR(h2(x1), dp::threshold_numeric(4, 2, hist), 1e-6) << "x1=" << x1;
  }
}

TEST(FourStep, PolicyThresholds) {
  const auto p = policy4();
  EXPECT_NEAR(p.threshold(1, {}), h1_constant4(), 1e-15);
  EXPECT_NEAR(p.threshold(2, std::vector<double>{0.3}), 0.3, 1e-15);
  EXPECT_NEAR(p.threshold(3, std::vector<double>{0.1, 0.15}), 0.375, 1e-15);
  EXPECT_EQ(p.threshold(4, std::vector<double>{0.1, 0.15, 0.2}), 1.0);
}

TEST(Regions, RasterBoundaries) { EXPECT_EQ(verify::region_raster_violations(512), 0u); }

TEST(Regions, DiagonalFollowsNeighbours) {
  EXPECT_EQ(classify_region(0.3, 0.3), Region::A2);
  EXPECT_EQ(classify_region(0.3, 0.3001), Region::A2);
  EXPECT_EQ(classify_region(0.7, 0.7), Region::A1);
  EXPECT_EQ(classify_region(0.7, 0.7001), Region::A1);
}
