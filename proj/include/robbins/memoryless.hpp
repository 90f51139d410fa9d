#pragma once

// Memoryless threshold rules: keep X_k iff X_k <= a_k for a fixed
// nondecreasing sequence a_1 <= ... <= a_n = 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "robbins/core.hpp"

namespace robbins {

class ThresholdVector {
 public:
  /// Validates 0 <= a_1 <= ... <= a_n = 1.
  explicit ThresholdVector(std::vector<double> a) : a_(std::move(a)) {
    if (a_.empty()) throw input_error("threshold vector must be non-empty");
    for (std::size_t k = 0; k < a_.size(); ++k) {
      if (!(a_[k] >= 0.0 && a_[k] <= 1.0))
        throw input_error("threshold a_" + std::to_string(k + 1) + " outside [0,1]");
      if (k > 0 && a_[k] < a_[k - 1])
        throw input_error("thresholds must be nondecreasing (a_" + std::to_string(k + 1) +
                          " < a_" + std::to_string(k) + ")");
    }
    if (a_.back() != 1.0) throw input_error("last threshold must equal 1");
  }

  int n() const noexcept { return static_cast<int>(a_.size()); }
  double operator[](std::size_t k) const { return a_[k]; }
  const std::vector<double>& values() const noexcept { return a_; }

 private:
  std::vector<double> a_;
};

/// Expected overall rank of the memoryless rule with thresholds `tv`:
///
///   1 + 1/2 sum_{k<n} (n-k) a_k^2 P_k + 1/2 sum_{k<=n} P_k sum_{j<k} (a_k-a_j)^2/(1-a_j),
///   P_k = prod_{j<k} (1-a_j).
///
/// The inner sum is carried as a_k^2 S0 - 2 a_k S1 + S2 with running sums
/// S_m = sum_j a_j^m/(1-a_j), so evaluation is O(n). If some a_j = 1 with
/// j < n the rule always stops by step j and later terms vanish.
inline double expected_rank(const ThresholdVector& tv) {
  const int n = tv.n();
  double total = 1.0;
  double survive = 1.0;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double a = tv[static_cast<std::size_t>(k - 1)];
    if (k < n) total += 0.5 * (n - k) * a * a * survive;
    total += 0.5 * survive * (a * a * s0 - 2.0 * a * s1 + s2);
    if (a >= 1.0) break;
    const double w = 1.0 / (1.0 - a);
    s0 += w;
    s1 += a * w;
    s2 += a * a * w;
    survive *= 1.0 - a;
  }
  return total;
}

/// Memoryless rule as a Policy.
inline Policy memoryless_policy(const ThresholdVector& tv, std::string id = {}) {
  if (id.empty()) {
    std::ostringstream os;
    os << "thresholds:";
    for (int k = 0; k < tv.n(); ++k) os << (k ? "," : "") << tv[static_cast<std::size_t>(k)];
    id = os.str();
  }
  auto a = tv.values();
  return Policy(std::move(id), tv.n(),
                [a = std::move(a)](int k, HistoryView) { return a[static_cast<std::size_t>(k - 1)]; });
}

// ---------------------------------------------------------------------------
// Optimization of memoryless thresholds.
// ---------------------------------------------------------------------------

struct OptimizeResult {
  ThresholdVector thresholds;
  double value;
  int sweeps;       // coordinate sweeps used by the winning start
  int start_index;  // which initialization won
};

struct OptimizeOptions {
  double tol = 1e-9;  // objective tolerance between sweeps
  int max_sweeps = 200000;
  int starts = 5;
};

namespace detail {

inline constexpr double kThresholdCap = 1.0 - 1e-12;

/// Golden-section minimization of f on [lo, hi]; returns argmin.
template <class F>
double golden_section(F&& f, double lo, double hi, double xtol) {
  constexpr double invphi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

/// Objective without validation, for the optimizer's inner loop.
inline double expected_rank_raw(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  double total = 1.0, survive = 1.0, s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double x = a[static_cast<std::size_t>(k - 1)];
    if (k < n) total += 0.5 * (n - k) * x * x * survive;
    total += 0.5 * survive * (x * x * s0 - 2.0 * x * s1 + s2);
    if (x >= 1.0) break;
    const double w = 1.0 / (1.0 - x);
    s0 += w;
    s1 += x * w;
    s2 += x * x * w;
    survive *= 1.0 - x;
  }
  return total;
}

struct StartOutcome {
  std::vector<double> a;
  double value;
  int sweeps;
  bool converged;
};

inline StartOutcome coordinate_descent(std::vector<double> a, const OptimizeOptions& opt) {
  const std::size_t n = a.size();
  double value = expected_rank_raw(a);
  for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    const double before = value;
    double max_step = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double lo = k == 0 ? 0.0 : a[k - 1];
      const double hi = std::min(a[k + 1], kThresholdCap);
      const double old = a[k];
      auto f = [&](double x) {
        a[k] = x;
        return expected_rank_raw(a);
      };
      const double current = f(old);
      double best = golden_section(f, lo, hi, 1e-12);
      // keep the current point unless the line search actually improves it
      if (f(best) > current) best = old;
      a[k] = best;
      max_step = std::max(max_step, std::abs(best - old));
    }
    value = expected_rank_raw(a);
    if (before - value < opt.tol * 1e-3 && max_step < 1e-9) return {std::move(a), value, sweep, true};
  }
  return {std::move(a), value, opt.max_sweeps, false};
}

}  // namespace detail

/// Minimize expected_rank over nondecreasing thresholds with a_n = 1.
/// Coordinate descent with golden-section line searches, run from `starts`
/// initializations a_k = q + (1-q)(k-1)/(n-1), q = s/(starts+1); the best
/// start wins, ties going to the lower start index.
inline OptimizeResult optimize(int n, const OptimizeOptions& opt = {}) {
  if (n < 1) throw input_error("horizon must be >= 1");
  if (!(opt.tol > 0.0)) throw input_error("tolerance must be positive");
  if (n == 1) return {ThresholdVector({1.0}), 1.0, 0, 0};

  std::vector<detail::StartOutcome> outcomes;
  for (int s = 1; s <= opt.starts; ++s) {
    const double q = static_cast<double>(s) / (opt.starts + 1);
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int k = 0; k < n - 1; ++k) a[static_cast<std::size_t>(k)] = q + (1.0 - q) * k / (n - 1);
    a.back() = 1.0;
    outcomes.push_back(detail::coordinate_descent(std::move(a), opt));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].value < outcomes[best].value) best = i;
  auto& win = outcomes[best];
  if (!win.converged)
    throw numerical_error("memoryless optimizer did not converge for n=" + std::to_string(n), win.value,
                          opt.tol);
  // running maximum guards the nondecreasing invariant against round-off
  std::vector<double> a = win.a;
  for (std::size_t k = 1; k < a.size(); ++k) a[k] = std::max(a[k], a[k - 1]);
  a.back() = 1.0;
  ThresholdVector tv(std::move(a));
  const double value = expected_rank(tv);
  return {std::move(tv), value, win.sweeps, static_cast<int>(best)};
}

// ---------------------------------------------------------------------------
// Parametric thresholds a_k = min(1, (c0 + c1 t + c2 t^2) / (n - k + c)),
// t = k/n, a_n = 1.
// ---------------------------------------------------------------------------

struct ASCCoefficients {
  double c0 = 1.77;
  double c1 = 0.54;
  double c2 = -0.27;
  double c = 1.0;  // denominator offset
};

inline ThresholdVector asc_thresholds(int n, const ASCCoefficients& co) {
  if (n < 1) throw input_error("horizon must be >= 1");
  std::vector<double> a(static_cast<std::size_t>(n), 1.0);
  for (int k = 1; k < n; ++k) {
    const double denom = n - k + co.c;
    if (!(denom > 0.0))
      throw input_error("ASC denominator n - k + c is not positive at k=" + std::to_string(k));
    const double t = static_cast<double>(k) / n;
    const double raw = (co.c0 + co.c1 * t + co.c2 * t * t) / denom;
    a[static_cast<std::size_t>(k - 1)] = std::clamp(raw, 0.0, 1.0);
  }
  for (std::size_t k = 1; k < a.size(); ++k) a[k] = std::max(a[k], a[k - 1]);
  return ThresholdVector(std::move(a));
}

struct ASCTuning {
  double c;
  double value;
};

/// 1-D golden-section search for the denominator offset c in [c_lo, c_hi].
inline ASCTuning tune_asc_offset(int n, ASCCoefficients co, double c_lo = 0.0, double c_hi = 20.0) {
  if (n < 1) throw input_error("horizon must be >= 1");
  if (!(c_lo > -1.0) || !(c_hi > c_lo)) throw input_error("offset search interval must satisfy -1 < lo < hi");
  auto f = [&](double c) {
    co.c = c;
    return expected_rank(asc_thresholds(n, co));
  };
  const double c = detail::golden_section(f, c_lo, c_hi, 1e-8);
  return {c, f(c)};
}

}  // namespace robbins
