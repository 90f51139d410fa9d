#pragma once

// Numerical backward induction for small horizons. Nothing here uses the
// closed forms in exact_policy.hpp; the two are checked against each other.
//
// Entering step k with history H = (x_1..x_{k-1}):
//   stop_value(n,k,H,x)        = 1 + #{h in H : h <= x} + (n-k) x
//   continuation_value(n,k,H)  = E[final rank | H, optimal play from step k]
//                              = int_0^1 min(stop_value(n,k,H,u),
//                                            continuation_value(n,k+1,H+u)) du
// with continuation_value(n,n,H) = 1 + sum_{h in H} (1-h) (forced stop).
// The optimal value is v(n) = continuation_value(n,1,{}).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "robbins/core.hpp"
#include "robbins/quadrature.hpp"

namespace robbins::dp {

inline constexpr int kMaxHorizon = 5;
inline constexpr double kBisectionTol = 1e-10;

/// Horizons 2..4 are cross-checked against published values; 5 is best effort.
inline bool validated_horizon(int n) { return n >= 1 && n <= 4; }

namespace detail {

inline void check_shape(int n, int k, HistoryView h) {
  if (n < 1 || n > kMaxHorizon) throw input_error("oracle horizon must be in [1, 5]");
  if (k < 1 || k > n) throw input_error("step must be in [1, n]");
  if (static_cast<int>(h.size()) != k - 1) throw input_error("history length must equal step - 1");
  robbins::detail::require_unit(h, "history value");
}

inline std::vector<double> extend(HistoryView h, double x) {
  std::vector<double> out(h.begin(), h.end());
  out.push_back(x);
  return out;
}

/// Sorted history values with 0 and 1 added: the continuity segments of stop_value.
inline std::vector<double> segments(HistoryView h) {
  std::vector<double> b{0.0};
  for (double v : h)
    if (v > 0.0 && v < 1.0) b.push_back(v);
  b.push_back(1.0);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

inline int count_le(HistoryView h, double x) {
  return static_cast<int>(std::count_if(h.begin(), h.end(), [x](double v) { return v <= x; }));
}

inline double forced_last_step(HistoryView h) {
  double v = 1.0;
  for (double x : h) v += 1.0 - x;
  return v;
}

/// Step n-1 in closed form. With one step left after this one the two
/// options are linear in u on each segment between history values:
///   stop:     1 + c + u
///   continue: A - u,   A = 2 + sum_h (1-h)
/// so the integral of their minimum is exact.
inline double penultimate_value(HistoryView h) {
  const double big_a = 1.0 + forced_last_step(h);
  const auto b = segments(h);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double l = b[i], r = b[i + 1];
    const double c = count_le(h, 0.5 * (l + r));
    const double m = std::clamp((big_a - 1.0 - c) / 2.0, l, r);
    total += (1.0 + c) * (m - l) + 0.5 * (m * m - l * l);
    total += big_a * (r - m) - 0.5 * (r * r - m * m);
  }
  return total;
}

}  // namespace detail

inline double stop_value(int n, int k, HistoryView history, double x) {
  detail::check_shape(n, k, history);
  robbins::detail::require_unit(x, "observation");
  return 1.0 + detail::count_le(history, x) + (n - k) * x;
}

inline double continuation_value(int n, int k, HistoryView history, const QuadConfig& cfg = {});

/// Smallest x at which stopping becomes strictly worse than continuing:
/// solves stop_value(n,k,H,x) = continuation_value(n,k+1,H+x) segment by
/// segment between history values, returning the first crossing. Returns 0
/// if stopping is never better, 1 if it always is.
inline double threshold_numeric(int n, int k, HistoryView history, const QuadConfig& cfg = {}) {
  detail::check_shape(n, k, history);
  if (k == n) return 1.0;
  cfg.validate();
  const auto b = detail::segments(history);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double l = b[i], r = b[i + 1];
    const double c = detail::count_le(history, 0.5 * (l + r));
    auto gap = [&](double x) {
      const auto ext = detail::extend(history, x);
      return 1.0 + c + (n - k) * x - continuation_value(n, k + 1, ext, cfg);
    };
    // at a history value the stop count already includes it
    const double at_l = 1.0 + detail::count_le(history, l) + (n - k) * l -
                        continuation_value(n, k + 1, detail::extend(history, l), cfg);
    if (std::isnan(at_l)) throw numerical_error("threshold search produced NaN", l, 0.0);
    if (at_l > 0.0) return l;
    const double at_r = gap(r);
    if (std::isnan(at_r)) throw numerical_error("threshold search produced NaN", r, 0.0);
    if (at_r <= 0.0) continue;
    double lo = l, hi = r;
    while (hi - lo > kBisectionTol) {
      const double mid = 0.5 * (lo + hi);
      const double g = gap(mid);
      if (std::isnan(g)) throw numerical_error("bisection bracket lost (NaN)", mid, hi - lo);
      (g > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  }
  return 1.0;
}

inline double continuation_value(int n, int k, HistoryView history, const QuadConfig& cfg) {
  detail::check_shape(n, k, history);
  if (k == n) return detail::forced_last_step(history);
  if (k == n - 1) return detail::penultimate_value(history);
  cfg.validate();

  auto breaks = detail::segments(history);
  const double t = threshold_numeric(n, k, history, cfg);
  if (t > 0.0 && t < 1.0) breaks.push_back(t);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // evaluate each panel on its open interior so history jumps do not leak in
  QuadResult total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double l = breaks[i], r = breaks[i + 1];
    const double c = detail::count_le(history, 0.5 * (l + r));
    const bool stop_side = r <= t;
    auto panel = [&](double u) {
      const double stop = 1.0 + c + (n - k) * u;
      if (stop_side) return stop;
      return std::min(stop, continuation_value(n, k + 1, detail::extend(history, u), cfg));
    };
    const auto res = adaptive_simpson(panel, l, r, cfg);
    total.value += res.value;
    total.error += res.error;
    total.converged = total.converged && res.converged;
  }
  if (!total.converged)
    throw numerical_error("continuation quadrature did not converge at step " + std::to_string(k), total.value,
                          total.error);
  return total.value;
}

/// Optimal expected rank v(n), computed by backward induction.
inline double value_v(int n, const QuadConfig& cfg = {}) {
  if (n < 1 || n > kMaxHorizon) throw input_error("oracle horizon must be in [1, 5]");
  return continuation_value(n, 1, {}, cfg);
}

}  // namespace robbins::dp
