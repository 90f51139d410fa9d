#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "robbins/core.hpp"

namespace robbins {

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 30;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw input_error("quadrature tolerances must be positive");
    if (max_depth < 1) throw input_error("quadrature max depth must be >= 1");
  }

  QuadConfig halved() const { return {rel_tol / 2.0, abs_tol / 2.0, max_depth}; }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // sum of |S2 - S1|/15 over accepted panels
  bool converged = true;
};

namespace detail {

struct SimpsonPanel {
  double a, b, fa, fm, fb, flm, frm;
  double refined;  // Richardson-corrected two-panel estimate
  double err;      // |S2 - S1| / 15
  int depth;
};

template <class F>
SimpsonPanel make_panel(F& f, double a, double b, double fa, double fm, double fb, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  const double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double fine = (b - a) / 12.0 * (fa + 4.0 * flm + 2.0 * fm + 4.0 * frm + fb);
  const double delta = fine - coarse;
  return {a, b, fa, fm, fb, flm, frm, fine + delta / 15.0, std::abs(delta) / 15.0, depth};
}

}  // namespace detail

/// Globally adaptive Simpson on [a, b]: the panel with the largest error
/// estimate is bisected until the summed estimate is at most
/// max(abs_tol, rel_tol * |integral|). Panels at max_depth are not split
/// further; if the target is still missed the result is flagged unconverged.
/// Panel values are summed in left-to-right order.
template <class F>
QuadResult adaptive_simpson(F&& f, double a, double b, const QuadConfig& cfg) {
  if (!(b > a)) return {};
  using detail::SimpsonPanel;
  auto by_error = [](const SimpsonPanel& x, const SimpsonPanel& y) { return x.err < y.err; };
  std::vector<SimpsonPanel> heap;  // max-heap on err, splittable panels only
  std::vector<SimpsonPanel> done;  // panels at max depth

  heap.push_back(detail::make_panel(f, a, b, f(a), f(0.5 * (a + b)), f(b), 0));
  double value = heap.front().refined, error = heap.front().err;
  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };

  while (error > target() && !heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const SimpsonPanel p = heap.back();
    heap.pop_back();
    if (p.depth >= cfg.max_depth) {
      done.push_back(p);
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    auto left = detail::make_panel(f, p.a, m, p.fa, p.flm, p.fm, p.depth + 1);
    auto right = detail::make_panel(f, m, p.b, p.fm, p.frm, p.fb, p.depth + 1);
    value += left.refined + right.refined - p.refined;
    error += left.err + right.err - p.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  done.insert(done.end(), heap.begin(), heap.end());
  std::sort(done.begin(), done.end(), [](const SimpsonPanel& x, const SimpsonPanel& y) { return x.a < y.a; });
  QuadResult out;
  for (const auto& p : done) {
    out.value += p.refined;
    out.error += p.err;
  }
  out.converged = out.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
  return out;
}

/// Integrate over [breaks.front(), breaks.back()] panel by panel, in order.
/// `breaks` must be sorted; zero-width panels are skipped.
template <class F>
QuadResult integrate_piecewise(F&& f, std::span<const double> breaks, const QuadConfig& cfg) {
  QuadResult total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto r = adaptive_simpson(f, breaks[i], breaks[i + 1], cfg);
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace robbins
