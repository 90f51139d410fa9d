#pragma once

// No-information benchmark: only relative ranks are observed.
//
// An item with relative rank r among the first k has expected overall rank
// r (n+1)/(k+1). Writing V_k(r) for the optimal expected final rank at step k
// with relative rank r:
//   V_n(r) = r
//   V_k(r) = min(r (n+1)/(k+1), c_k),   c_k = 1/(k+1) sum_{r'=1}^{k+1} V_{k+1}(r')
// and W(n) = V_1(1).
//
// V_{k+1}(r') = min(slope * r', c_{k+1}) is a clipped line in r', so its sum
// has a closed form and each c_k costs O(1): W(n) is O(n).

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "robbins/core.hpp"

namespace robbins {

namespace detail {

/// sum_{r=1}^{m} min(slope * r, cap), slope > 0.
inline double clipped_line_sum(double slope, double cap, long m) {
  long below = cap >= slope * static_cast<double>(m) ? m : static_cast<long>(std::floor(cap / slope));
  below = std::clamp(below, 0L, m);
  // floor() can land one off when cap/slope sits on an integer
  while (below < m && slope * static_cast<double>(below + 1) <= cap) ++below;
  while (below > 0 && slope * static_cast<double>(below) > cap) --below;
  const double b = static_cast<double>(below);
  const double lower = slope * b * (b + 1.0) / 2.0;
  // skip the capped part when empty: cap may be +infinity
  return below == m ? lower : lower + static_cast<double>(m - below) * cap;
}

}  // namespace detail

inline double w_value(int n) {
  if (n < 1) throw input_error("horizon must be >= 1");
  const double np1 = n + 1.0;
  // c_{n} is +infinity: no continuation after the last step
  double cont = std::numeric_limits<double>::infinity();
  for (int k = n - 1; k >= 1; --k) {
    // average of V_{k+1}(r') over r' = 1..k+1
    const double slope = np1 / (k + 2.0);
    cont = detail::clipped_line_sum(slope, cont, k + 1) / (k + 1.0);
  }
  return std::min(np1 / 2.0, cont);
}

inline std::vector<std::pair<int, double>> w_table(int max_n) {
  if (max_n < 1) throw input_error("max_n must be >= 1");
  std::vector<std::pair<int, double>> rows;
  rows.reserve(static_cast<std::size_t>(max_n));
  for (int n = 1; n <= max_n; ++n) rows.emplace_back(n, w_value(n));
  return rows;
}

/// The optimal rule as relative-rank cutoffs: at step k stop iff the current
/// relative rank r satisfies r (n+1)/(k+1) <= c_k. Entry k-1 holds the largest
/// such r (0 means never stop, n at the last step).
inline std::vector<int> w_cutoffs(int n) {
  if (n < 1) throw input_error("horizon must be >= 1");
  const double np1 = n + 1.0;
  std::vector<int> cut(static_cast<std::size_t>(n));
  cut.back() = n;
  double cont = std::numeric_limits<double>::infinity();
  for (int k = n - 1; k >= 1; --k) {
    cont = detail::clipped_line_sum(np1 / (k + 2.0), cont, k + 1) / (k + 1.0);
    const double slope = np1 / (k + 1.0);
    int r = 0;
    while (r < k && slope * (r + 1) <= cont) ++r;
    cut[static_cast<std::size_t>(k - 1)] = r;
  }
  return cut;
}

}  // namespace robbins
