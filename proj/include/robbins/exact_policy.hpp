#pragma once

// Closed-form optimal policies for horizons 2, 3 and 4.
//
// G functions give the expected final rank when the next step is played with
// threshold h and everything after it is forced:
//   n=2, from step 1:             g2(h)         = 1 + h^2/2 + (1-h)^2/2
//   n=3, from step 2, X1=x1:      g3(x1, h)     = 3/2 + h^2 - h + (1-x1)(1-h) + (h-x1)+
//   n=4, from step 3, (X1,X2):    g4(x1, x2, h) = 3/2 + h^2 - h + (2-x1-x2)(1-h) + sum_i (h-x_i)+
// Each is a union of convex parabolas joined by convex kinks at the past
// observations, so its minimizer is found exactly from a short candidate list.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "robbins/core.hpp"

namespace robbins {

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

/// Optimal step-1 threshold and optimal value for n = 3.
struct Constants3 {
  double a;   // (5 - sqrt 13)/4
  double v3;  // 341/144 - (13/48) sqrt 13
};

inline Constants3 constants3() {
  const double r13 = std::sqrt(13.0);
  return {(5.0 - r13) / 4.0, 341.0 / 144.0 - 13.0 / 48.0 * r13};
}

/// Breakpoints of the n = 4 step-2 threshold curve.
struct Betas {
  std::array<double, 5> b;
  double operator[](std::size_t i) const { return b[i]; }
};

inline Betas betas() {
  return {{1.5 * std::sqrt(2.0) - 2.0, (std::sqrt(30.0) - 5.0) / 2.0, (7.0 - std::sqrt(19.0)) / 6.0,
           (11.0 - 3.0 * std::sqrt(11.0)) / 2.0, (7.0 - 3.0 * std::sqrt(3.0)) / 2.0}};
}

/// Optimal step-1 threshold for n = 4 (real root of a cubic, Cardano form).
inline double h1_constant4() {
  const double base = 6.0 / 1849.0 * std::sqrt(123199.0) - 87150.0 / 79507.0;
  const double cb = std::cbrt(base);
  return cb - (846.0 / 1849.0) / cb + 53.0 / 43.0;
}

// ---------------------------------------------------------------------------
// n = 2
// ---------------------------------------------------------------------------

inline double g2(double h) {
  detail::require_unit(h, "threshold h");
  return 1.0 + 0.5 * h * h + 0.5 * (1.0 - h) * (1.0 - h);
}

inline Policy policy2() {
  return Policy("exact2", 2, [](int, HistoryView) { return 0.5; });
}

// ---------------------------------------------------------------------------
// n = 3
// ---------------------------------------------------------------------------

inline double g3(double x1, double h) {
  detail::require_unit(x1, "x1");
  detail::require_unit(h, "threshold h");
  return 1.5 + h * h - h + (1.0 - x1) * (1.0 - h) + std::max(h - x1, 0.0);
}

/// Minimizer of g3(x1, .) over [0,1].
inline double argmin_g3(double x1) {
  detail::require_unit(x1, "x1");
  if (x1 < 1.0 / 3.0) return (1.0 - x1) / 2.0;
  if (x1 < 2.0 / 3.0) return x1;
  return 1.0 - x1 / 2.0;
}

/// Step 2 plays argmin_g3 for every history, which agrees with the
/// three-piece h2 on the reachable set x1 > h1 and stays optimal off it.
inline Policy policy3() {
  const double h1 = constants3().a;
  return Policy("exact3", 3, [h1](int k, HistoryView hist) {
    return k == 1 ? h1 : argmin_g3(hist[0]);
  });
}

// ---------------------------------------------------------------------------
// n = 4, step 3
// ---------------------------------------------------------------------------

enum class Region { A1, A2, B1, B2, B3 };

inline std::string_view to_string(Region r) {
  switch (r) {
    case Region::A1: return "A1";
    case Region::A2: return "A2";
    case Region::B1: return "B1";
    case Region::B2: return "B2";
    case Region::B3: return "B3";
  }
  return "?";
}

inline double g4(double x1, double x2, double h) {
  detail::require_unit(x1, "x1");
  detail::require_unit(x2, "x2");
  detail::require_unit(h, "threshold h");
  return 1.5 + h * h - h + (2.0 - x1 - x2) * (1.0 - h) + std::max(h - x1, 0.0) + std::max(h - x2, 0.0);
}

struct Step3Argmin {
  double h;
  Region region;
  double value;
};

/// Exact minimizer of g4(x1, x2, .) over [0,1].
///
/// Candidates: the kinks min(x1,x2) (A1) and max(x1,x2) (A2), each parabola's
/// vertex when it lies strictly inside its own piece -- lower (3-s)/2 -> B1,
/// middle (2-s)/2 -> B2, upper (1-s)/2 -> B3 with s = x1+x2 -- and the
/// endpoints 0, 1. Smallest g4 wins; ties go to the smaller h, then to the
/// earlier candidate in that list. On the diagonal the two kinks coincide and
/// the label follows the neighbouring cells: A2 while the middle vertex lies
/// to the right of the kink (x < 1/2), A1 otherwise.
inline Step3Argmin step3_argmin(double x1, double x2) {
  detail::require_unit(x1, "x1");
  detail::require_unit(x2, "x2");
  const double lo = std::min(x1, x2), hi = std::max(x1, x2), s = x1 + x2;

  struct Candidate {
    double h;
    Region region;
  };
  std::array<Candidate, 7> cand{};
  std::size_t m = 0;
  const bool upper_first = lo == hi && (2.0 - s) / 2.0 > lo;
  cand[m++] = {lo, upper_first ? Region::A2 : Region::A1};
  cand[m++] = {hi, upper_first ? Region::A1 : Region::A2};
  if (const double v = (3.0 - s) / 2.0; v < lo) cand[m++] = {v, Region::B1};
  if (const double v = (2.0 - s) / 2.0; v > lo && v < hi) cand[m++] = {v, Region::B2};
  if (const double v = (1.0 - s) / 2.0; v > hi) cand[m++] = {v, Region::B3};
  if (lo > 0.0) cand[m++] = {0.0, Region::B1};
  if (hi < 1.0) cand[m++] = {1.0, Region::B3};

  Step3Argmin best{cand[0].h, cand[0].region, g4(x1, x2, cand[0].h)};
  for (std::size_t i = 1; i < m; ++i) {
    const double val = g4(x1, x2, cand[i].h);
    if (val < best.value || (val == best.value && cand[i].h < best.h))
      best = {cand[i].h, cand[i].region, val};
  }
  return best;
}

inline Region classify_region(double x1, double x2) { return step3_argmin(x1, x2).region; }

/// Optimal step-3 threshold for n = 4.
inline double h3(double x1, double x2) { return step3_argmin(x1, x2).h; }

/// h3 evaluated from the region label and the per-region formula.
inline double h3_from_region(Region r, double x1, double x2) {
  const double s = x1 + x2;
  switch (r) {
    case Region::A1: return std::min(x1, x2);
    case Region::A2: return std::max(x1, x2);
    case Region::B1: return (3.0 - s) / 2.0;
    case Region::B2: return (2.0 - s) / 2.0;
    case Region::B3: return (1.0 - s) / 2.0;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// n = 4, step 2: six-piece threshold curve
// ---------------------------------------------------------------------------

/// One closed-form piece. Two families cover all six pieces:
///   Radical:  c0 + c1 x + c2 sqrt(d2 x^2 + d1 x + d0)
///   Rational: (p2 x^2 + p1 x + p0) / (q1 x + q0)
struct CurvePiece {
  enum class Family { Radical, Rational };
  std::string formula;
  Family family;
  std::array<double, 6> coef;  // Radical: c0 c1 c2 d2 d1 d0; Rational: p2 p1 p0 q1 q0 -

  double operator()(double x) const {
    const auto& c = coef;
    if (family == Family::Radical) {
      const double root = c[2] == 0.0 ? 0.0 : std::sqrt(c[3] * x * x + c[4] * x + c[5]);
      return c[0] + c[1] * x + c[2] * root;
    }
    return (c[0] * x * x + c[1] * x + c[2]) / (c[3] * x + c[4]);
  }
};

/// Continuous function on [breakpoints.front(), breakpoints.back()] given by
/// pieces[i] on [breakpoints[i], breakpoints[i+1]]. A point exactly on an
/// interior breakpoint is evaluated with the piece to its right.
class PiecewiseCurve {
 public:
  PiecewiseCurve(std::vector<double> breakpoints, std::vector<CurvePiece> pieces)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breaks_.size() != pieces_.size() + 1 || pieces_.empty())
      throw input_error("piecewise curve needs one more breakpoint than pieces");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()))
      throw input_error("piecewise curve breakpoints must be sorted");
  }

  std::size_t piece_index(double x) const {
    const auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, x);
    return static_cast<std::size_t>(it - (breaks_.begin() + 1));
  }

  double operator()(double x) const {
    if (!(x >= breaks_.front() && x <= breaks_.back())) throw input_error("argument outside curve domain");
    return pieces_[piece_index(x)](x);
  }

  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  const std::vector<CurvePiece>& pieces() const noexcept { return pieces_; }

 private:
  std::vector<double> breaks_;
  std::vector<CurvePiece> pieces_;
};

/// h2 for n = 4 with the given breakpoints (exposed so tampered breakpoints
/// can be checked by the verification suite).
inline PiecewiseCurve h2_curve(const Betas& be) {
  using F = CurvePiece::Family;
  std::vector<CurvePiece> pieces{
      {"(5 - x - sqrt(x^2 + 6x + 13))/4", F::Radical, {1.25, -0.25, -0.25, 1.0, 6.0, 13.0}},
      {"sqrt(8x + 54) - x - 7", F::Radical, {-7.0, -1.0, 1.0, 0.0, 8.0, 54.0}},
      {"x", F::Radical, {0.0, 1.0, 0.0, 0.0, 0.0, 0.0}},
      {"-(4x^2 - 6x + 5)/(2(x - 4))", F::Rational, {-4.0, 6.0, -5.0, 2.0, -8.0, 0.0}},
      {"sqrt(12x + 42) - 6 - x", F::Radical, {-6.0, -1.0, 1.0, 0.0, 12.0, 42.0}},
      {"3/2 - (x + sqrt(x^2 - 4x + 16))/4", F::Radical, {1.5, -0.25, -0.25, 1.0, -4.0, 16.0}},
  };
  return PiecewiseCurve({0.0, be[0], be[1], be[2], be[3], be[4], 1.0}, std::move(pieces));
}

inline const PiecewiseCurve& h2_curve() {
  static const PiecewiseCurve curve = h2_curve(betas());
  return curve;
}

/// Optimal step-2 threshold for n = 4.
inline double h2(double x1) {
  detail::require_unit(x1, "x1");
  return h2_curve()(x1);
}

inline Policy policy4() {
  const double first = h1_constant4();
  return Policy("exact4", 4, [first](int k, HistoryView hist) {
    switch (k) {
      case 1: return first;
      case 2: return h2_curve()(hist[0]);
      default: return step3_argmin(hist[0], hist[1]).h;
    }
  });
}

}  // namespace robbins
