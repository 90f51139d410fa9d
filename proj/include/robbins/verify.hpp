#pragma once

// Cross-check suite: closed forms vs. backward induction vs. simulation.
// Every check is addressable by name and reports achieved vs. required.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "robbins/core.hpp"
#include "robbins/dp_oracle.hpp"
#include "robbins/exact_policy.hpp"
#include "robbins/memoryless.hpp"
#include "robbins/montecarlo.hpp"
#include "robbins/no_info.hpp"

namespace robbins::verify {

enum class Level { Quick, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  double achieved = 0.0;
  double required = 0.0;
  std::string detail;
};

/// Inputs a check may be pointed at. Defaults are the canonical constants;
/// tests swap in perturbed breakpoints to confirm the checks can fail.
struct Context {
  Betas betas = robbins::betas();
  SimOptions sim{};
};

// Reference decimals, truncated rather than rounded.
inline constexpr double kV3Decimal = 1.39155;
inline constexpr double kV4Decimal = 1.49329;
inline constexpr double kH1Decimal = 0.27502;
inline constexpr std::array<double, 5> kBetaDecimals{0.12132, 0.23861, 0.44018, 0.52506, 0.90192};
inline constexpr double kNoInfoLimit = 3.8695;

struct Table1Row {
  int n;
  double value;
};
inline constexpr std::array<Table1Row, 7> kTable1{
    {{1, 1.0}, {2, 1.25}, {3, 1.4009}, {4, 1.5065}, {5, 1.5861}, {20, 1.9890}, {50, 2.1482}}};

// ---------------------------------------------------------------------------
// Helpers shared with the test suites
// ---------------------------------------------------------------------------

/// Largest |left piece - right piece| over the interior breakpoints.
inline double max_breakpoint_jump(const PiecewiseCurve& c) {
  double worst = 0.0;
  const auto& b = c.breakpoints();
  for (std::size_t i = 1; i + 1 < b.size(); ++i)
    worst = std::max(worst, std::abs(c.pieces()[i - 1](b[i]) - c.pieces()[i](b[i])));
  return worst;
}

/// |left derivative - right derivative| at interior breakpoint i (1-based
/// index into the breakpoint list), from one-sided difference quotients.
inline double derivative_mismatch(const PiecewiseCurve& c, std::size_t i, double step = 1e-7) {
  const double x = c.breakpoints()[i];
  const auto& left = c.pieces()[i - 1];
  const auto& right = c.pieces()[i];
  const double dl = (left(x) - left(x - step)) / step;
  const double dr = (right(x + step) - right(x)) / step;
  return std::abs(dl - dr);
}

/// Region boundary lines, written as x2 = slope * x1 + intercept.
struct Line {
  double slope, intercept;
  double side(double x1, double x2) const { return x2 - (slope * x1 + intercept); }
};
inline constexpr std::array<Line, 6> kRegionLines{{{-1.0 / 3.0, 1.0},
                                                   {-1.0 / 3.0, 2.0 / 3.0},
                                                   {-1.0 / 3.0, 1.0 / 3.0},
                                                   {-3.0, 3.0},
                                                   {-3.0, 2.0},
                                                   {-3.0, 1.0}}};

/// Classify the grid x grid raster of cell centres and count adjacent cell
/// pairs whose labels differ although no boundary line passes between them.
inline std::size_t region_raster_violations(int grid) {
  if (grid < 2) throw input_error("grid must be >= 2");
  const auto g = static_cast<std::size_t>(grid);
  auto centre = [grid](std::size_t i) { return (static_cast<double>(i) + 0.5) / grid; };
  std::vector<Region> raster(g * g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) raster[i * g + j] = classify_region(centre(i), centre(j));

  auto separated = [&](double a1, double a2, double b1, double b2) {
    return std::any_of(kRegionLines.begin(), kRegionLines.end(), [&](const Line& l) {
      const double sa = l.side(a1, a2), sb = l.side(b1, b2);
      return (sa <= 0.0 && sb >= 0.0) || (sa >= 0.0 && sb <= 0.0);
    });
  };
  std::size_t bad = 0;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (i + 1 < g && raster[i * g + j] != raster[(i + 1) * g + j] &&
          !separated(centre(i), centre(j), centre(i + 1), centre(j)))
        ++bad;
      if (j + 1 < g && raster[i * g + j] != raster[i * g + j + 1] &&
          !separated(centre(i), centre(j), centre(i), centre(j + 1)))
        ++bad;
    }
  return bad;
}

/// Argmin of f over the uniform grid {0, 1/(points-1), ..., 1}.
template <class F>
double grid_argmin(F&& f, int points) {
  double best_h = 0.0, best = f(0.0);
  for (int i = 1; i < points; ++i) {
    const double h = static_cast<double>(i) / (points - 1);
    const double v = f(h);
    if (v < best) {
      best = v;
      best_h = h;
    }
  }
  return best_h;
}

// ---------------------------------------------------------------------------
// The checks
// ---------------------------------------------------------------------------

namespace detail {

inline CheckResult within(std::string name, double achieved, double required, std::string detail = {}) {
  return {std::move(name), achieved <= required, achieved, required, std::move(detail)};
}

inline std::uint64_t sim_trials(Level level) { return level == Level::Full ? 10'000'000 : 200'000; }

}  // namespace detail

struct Check {
  std::string name;
  Level level;  // Quick checks run in both levels
  std::function<CheckResult(const Context&, Level)> run;
};

inline std::vector<Check> all_checks() {
  using detail::within;
  std::vector<Check> c;
  const QuadConfig cfg{};

  c.push_back({"v2-closed", Level::Quick, [](const Context&, Level) {
                 const double h = grid_argmin([](double x) { return g2(x); }, 100001);
                 return within("v2-closed", std::abs(g2(0.5) - 1.25) + std::abs(h - 0.5), 0.0,
                               "g2(1/2) = 5/4 and 1/2 is the grid argmin of g2");
               }});
  c.push_back({"v2-oracle", Level::Quick, [cfg](const Context&, Level) {
                 return within("v2-oracle", std::abs(dp::value_v(2, cfg) - 1.25), 1e-8);
               }});
  c.push_back({"v3-oracle", Level::Quick, [cfg](const Context&, Level) {
                 const double v = dp::value_v(3, cfg);
                 return within("v3-oracle", std::abs(v - constants3().v3), 1e-6,
                               "oracle " + std::to_string(v) + " vs closed form");
               }});
  c.push_back({"v3-decimal", Level::Quick, [](const Context&, Level) {
                 return within("v3-decimal", std::abs(constants3().v3 - kV3Decimal), 1e-5);
               }});
  c.push_back({"v4-oracle", Level::Quick, [cfg](const Context&, Level) {
                 return within("v4-oracle", std::abs(dp::value_v(4, cfg) - kV4Decimal), 1e-5);
               }});
  c.push_back({"v4-convergence", Level::Quick, [cfg](const Context&, Level) {
                 return within("v4-convergence", std::abs(dp::value_v(4, cfg) - dp::value_v(4, cfg.halved())), 1e-6,
                               "change in v(4) when quadrature tolerances are halved");
               }});
  c.push_back({"h1-n3-oracle", Level::Quick, [cfg](const Context&, Level) {
                 return within("h1-n3-oracle", std::abs(dp::threshold_numeric(3, 1, {}, cfg) - constants3().a), 1e-9);
               }});
  c.push_back({"h1-n4-decimal", Level::Quick, [](const Context&, Level) {
                 return within("h1-n4-decimal", std::abs(h1_constant4() - kH1Decimal), 1e-5);
               }});
  c.push_back({"h1-n4-oracle", Level::Quick, [cfg](const Context&, Level) {
                 return within("h1-n4-oracle", std::abs(dp::threshold_numeric(4, 1, {}, cfg) - h1_constant4()), 1e-9);
               }});
  c.push_back({"h1-n4-interval", Level::Quick, [](const Context& ctx, Level) {
                 const double h = h1_constant4();
                 const bool ok = h > ctx.betas[1] && h < ctx.betas[2];
                 return CheckResult{"h1-n4-interval", ok, h, 0.0, "h1 must lie in (beta2, beta3)"};
               }});
  c.push_back({"betas-decimal", Level::Quick, [](const Context& ctx, Level) {
                 double worst = 0.0;
                 for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(ctx.betas[i] - kBetaDecimals[i]));
                 return within("betas-decimal", worst, 5e-6, "breakpoints vs 5-decimal values");
               }});
  c.push_back({"h2-continuity", Level::Quick, [](const Context& ctx, Level) {
                 return within("h2-continuity", max_breakpoint_jump(h2_curve(ctx.betas)), 1e-12);
               }});
  c.push_back({"h2-differentiability", Level::Quick, [](const Context& ctx, Level) {
                 const auto curve = h2_curve(ctx.betas);
                 double worst = 0.0;
                 for (std::size_t i : {1u, 4u, 5u}) worst = std::max(worst, derivative_mismatch(curve, i));
                 return within("h2-differentiability", worst, 1e-5, "one-sided slopes at beta1, beta4, beta5");
               }});
  c.push_back({"h2-endcases", Level::Quick, [](const Context& ctx, Level) {
                 const auto curve = h2_curve(ctx.betas);
                 const double a = constants3().a;
                 return within("h2-endcases", std::max(std::abs(curve(0.0) - a), std::abs(curve(1.0) - a)), 1e-12);
               }});
  c.push_back({"h2-oracle", Level::Quick, [cfg](const Context& ctx, Level level) {
                 const auto curve = h2_curve(ctx.betas);
                 const int points = level == Level::Full ? 200 : 21;
                 double worst = 0.0;
                 for (int i = 0; i < points; ++i) {
                   const double x = static_cast<double>(i) / (points - 1);
                   const std::array<double, 1> hist{x};
                   worst = std::max(worst, std::abs(dp::threshold_numeric(4, 2, hist, cfg) - curve(x)));
                 }
                 return within("h2-oracle", worst, 1e-6, std::to_string(points) + " grid points");
               }});
  c.push_back({"h3-grid", Level::Quick, [](const Context&, Level level) {
                 const int samples = level == Level::Full ? 1000 : 100;
                 const int points = level == Level::Full ? 100001 : 10001;
                 const double step = 1.0 / (points - 1);
                 RandomStream rs(20240601, 3);
                 double worst = 0.0;
                 for (int i = 0; i < samples; ++i) {
                   const double x1 = rs.next_uniform(), x2 = rs.next_uniform();
                   const double g = grid_argmin([&](double h) { return g4(x1, x2, h); }, points);
                   worst = std::max(worst, std::abs(h3(x1, x2) - g));
                 }
                 return within("h3-grid", worst, step, std::to_string(samples) + " random histories");
               }});
  c.push_back({"h3-oracle", Level::Quick, [cfg](const Context&, Level level) {
                 const int samples = level == Level::Full ? 1000 : 100;
                 RandomStream rs(20240601, 4);
                 double worst = 0.0;
                 for (int i = 0; i < samples; ++i) {
                   const std::array<double, 2> hist{rs.next_uniform(), rs.next_uniform()};
                   worst = std::max(worst, std::abs(dp::threshold_numeric(4, 3, hist, cfg) - h3(hist[0], hist[1])));
                 }
                 return within("h3-oracle", worst, 1e-6);
               }});
  c.push_back({"regions-boundaries", Level::Quick, [](const Context&, Level level) {
                 const int grid = level == Level::Full ? 512 : 128;
                 const auto bad = region_raster_violations(grid);
                 return within("regions-boundaries", static_cast<double>(bad), 0.0,
                               "label changes not explained by a boundary line, grid " + std::to_string(grid));
               }});
  c.push_back({"table1", Level::Quick, [](const Context&, Level level) {
                 double worst = 0.0;
                 std::string where;
                 for (const auto& row : kTable1) {
                   if (level == Level::Quick && row.n > 5) continue;
                   const double d = std::abs(optimize(row.n).value - row.value);
                   if (d > worst) {
                     worst = d;
                     where = "worst at n=" + std::to_string(row.n);
                   }
                 }
                 return within("table1", worst, 5e-4, where);
               }});
  c.push_back({"oracle-vs-memoryless-gap", Level::Quick, [cfg](const Context&, Level) {
                 double smallest = 1.0;
                 for (int n : {3, 4}) smallest = std::min(smallest, optimize(n).value - dp::value_v(n, cfg));
                 return CheckResult{"oracle-vs-memoryless-gap", smallest > 1e-3, smallest, 1e-3,
                                    "min over n=3,4 of V(n) - v(n); must exceed the requirement"};
               }});
  c.push_back({"noinfo-bound", Level::Quick, [](const Context&, Level level) {
                 const int max_n = level == Level::Full ? 10000 : 1000;
                 double prev = 0.0;
                 bool monotone = true;
                 for (int n = 1; n <= max_n; ++n) {
                   const double w = w_value(n);
                   monotone = monotone && w >= prev;
                   prev = w;
                 }
                 const bool ok = monotone && prev < kNoInfoLimit + 1e-3 && std::abs(w_value(3) - 5.0 / 3.0) < 1e-12;
                 return CheckResult{"noinfo-bound", ok, prev, kNoInfoLimit + 1e-3,
                                    "W(n) nondecreasing up to n=" + std::to_string(max_n) + ", W(3)=5/3"};
               }});
  c.push_back({"asc-1000", Level::Quick, [](const Context&, Level) {
                 const auto t = tune_asc_offset(1000, ASCCoefficients{});
                 const bool ok = t.value >= 2.29 && t.value <= 2.34;
                 return CheckResult{"asc-1000", ok, t.value, 2.34,
                                    "expected rank must lie in [2.29, 2.34]; tuned c=" + std::to_string(t.c)};
               }});

  // simulation checks: the full level uses 10^7 trials
  c.push_back({"mc-v3", Level::Quick, [](const Context& ctx, Level level) {
                 const auto r = evaluate(policy3(), detail::sim_trials(level), 42, ctx.sim);
                 return within("mc-v3", std::abs(r.mean - constants3().v3) / r.std_error, 4.0,
                               "standard errors from v(3)");
               }});
  c.push_back({"mc-v4", Level::Quick, [](const Context& ctx, Level level) {
                 const auto r = evaluate(policy4(), detail::sim_trials(level), 42, ctx.sim);
                 return within("mc-v4", std::abs(r.mean - kV4Decimal) / r.std_error, 4.0, "standard errors from v(4)");
               }});
  c.push_back({"mc-memoryless4", Level::Full, [](const Context& ctx, Level level) {
                 const auto r = evaluate(memoryless_policy(optimize(4).thresholds), detail::sim_trials(level), 42, ctx.sim);
                 return within("mc-memoryless4", std::abs(r.mean - 1.5065) / r.std_error, 4.0,
                               "standard errors from V(4)");
               }});
  c.push_back({"mc-paired-gap", Level::Full, [](const Context& ctx, Level level) {
                 const auto r = compare({policy4(), memoryless_policy(optimize(4).thresholds)},
                                        detail::sim_trials(level), 42, ctx.sim);
                 const auto& d = r.differences.front();
                 const bool ok = d.mean < 0.0 && std::abs(-d.mean - 0.0132) <= 4.0 * d.std_error;
                 return CheckResult{"mc-paired-gap", ok, std::abs(-d.mean - 0.0132) / d.std_error, 4.0,
                                    "paired standard errors from the 0.0132 gap"};
               }});
  return c;
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : all_checks()) names.push_back(c.name);
  return names;
}

/// Run every check enabled at `level`, or only the check named `only`.
inline std::vector<CheckResult> run(Level level, const Context& ctx = {}, std::string_view only = {}) {
  std::vector<CheckResult> out;
  bool found = only.empty();
  for (const auto& c : all_checks()) {
    if (!only.empty()) {
      if (c.name != only) continue;
      found = true;
    } else if (c.level == Level::Full && level == Level::Quick) {
      continue;
    }
    try {
      out.push_back(c.run(ctx, level));
    } catch (const std::exception& e) {
      out.push_back({c.name, false, 0.0, 0.0, std::string("exception: ") + e.what()});
    }
  }
  if (!found) throw input_error("unknown check '" + std::string(only) + "'");
  return out;
}

}  // namespace robbins::verify
