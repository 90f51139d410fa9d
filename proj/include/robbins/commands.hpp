#pragma once

// Command implementations behind the `robbins` CLI. Each returns either a
// JSON envelope or a CSV table; the binary only parses flags and writes.

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "robbins/dp_oracle.hpp"
#include "robbins/envelope.hpp"
#include "robbins/exact_policy.hpp"
#include "robbins/memoryless.hpp"
#include "robbins/montecarlo.hpp"
#include "robbins/no_info.hpp"
#include "robbins/registry.hpp"
#include "robbins/verify.hpp"

namespace robbins::cmd {

using out::CsvTable;
using out::Json;

enum class Format { Csv, Json };

/// Exit codes of the CLI.
enum ExitCode : int { kOk = 0, kInputError = 1, kVerifyFailed = 2, kNonConvergence = 3 };

struct Output {
  std::string text;
  int exit_code = kOk;
};

inline std::string render(const std::string& command, const Json& params, const Json& results, const CsvTable& table,
                          Format fmt) {
  if (fmt == Format::Csv) return table.str();
  return out::dump(out::envelope(command, params, results));
}

// ---------------------------------------------------------------------------

inline Output table1(int max_n, double tol, Format fmt) {
  if (max_n < 1 || max_n > 50) throw input_error("max-n must be in [1, 50]");
  if (!(tol > 0.0)) throw input_error("tol must be positive");
  CsvTable t({"n", "V"});
  Json rows = Json::array();
  int code = kOk;
  for (int n = 1; n <= max_n; ++n) {
    try {
      const auto r = optimize(n, OptimizeOptions{tol});
      t.add({std::to_string(n), out::format_real(r.value)});
      rows.push_back({{"n", n}, {"V", out::real(r.value)}});
    } catch (const numerical_error& e) {
      code = kNonConvergence;
      t.add({std::to_string(n), "nan"});
      rows.push_back({{"n", n}, {"error", e.what()}, {"best", out::real(e.best())}});
    }
  }
  return {render("table1", {{"max_n", max_n}, {"tol", out::real(tol)}}, Json{{"rows", rows}}, t, fmt), code};
}

// ---------------------------------------------------------------------------

inline Output thresholds(int n, Format fmt) {
  CsvTable t({"kind", "name", "lower", "upper", "value", "formula"});
  Json res = Json::object();
  auto r = [](double v) { return out::format_real(v); };

  switch (n) {
    case 2:
      res["h1"] = out::real(0.5);
      res["v"] = out::real(g2(0.5));
      t.add({"constant", "h1", "", "", r(0.5), "1/2"});
      t.add({"constant", "v", "", "", r(g2(0.5)), "5/4"});
      break;
    case 3: {
      const auto c3 = constants3();
      res["h1"] = out::real(c3.a);
      res["v"] = out::real(c3.v3);
      res["h2_pieces"] = Json::array({
          {{"lower", out::real(0.0)}, {"upper", out::real(1.0 / 3.0)}, {"formula", "(1 - x)/2"}, {"case", "A1"}},
          {{"lower", out::real(1.0 / 3.0)}, {"upper", out::real(2.0 / 3.0)}, {"formula", "x"}, {"case", "A2"}},
          {{"lower", out::real(2.0 / 3.0)}, {"upper", out::real(1.0)}, {"formula", "1 - x/2"}, {"case", "A3"}},
      });
      t.add({"constant", "h1", "", "", r(c3.a), "(5 - sqrt(13))/4"});
      t.add({"constant", "v", "", "", r(c3.v3), "341/144 - (13/48) sqrt(13)"});
      t.add({"h2", "A1", r(0.0), r(1.0 / 3.0), "", "(1 - x)/2"});
      t.add({"h2", "A2", r(1.0 / 3.0), r(2.0 / 3.0), "", "x"});
      t.add({"h2", "A3", r(2.0 / 3.0), r(1.0), "", "1 - x/2"});
      break;
    }
    case 4: {
      const double h1 = h1_constant4();
      const auto be = betas();
      const auto& curve = h2_curve();
      res["h1"] = out::real(h1);
      t.add({"constant", "h1", "", "", r(h1),
             "(6 sqrt(123199)/1849 - 87150/79507)^(1/3) - (846/1849)(...)^(-1/3) + 53/43"});
      Json bl = Json::array();
      const char* beta_forms[] = {"(3/2) sqrt(2) - 2", "(sqrt(30) - 5)/2", "(7 - sqrt(19))/6",
                                  "(11 - 3 sqrt(11))/2", "(7 - 3 sqrt(3))/2"};
      for (std::size_t i = 0; i < 5; ++i) {
        bl.push_back(out::real(be[i]));
        t.add({"beta", "beta" + std::to_string(i + 1), "", "", r(be[i]), beta_forms[i]});
      }
      res["betas"] = bl;
      Json pieces = Json::array();
      for (std::size_t i = 0; i < curve.pieces().size(); ++i) {
        const auto& p = curve.pieces()[i];
        const double lo = curve.breakpoints()[i], hi = curve.breakpoints()[i + 1];
        Json coef = Json::array();
        const std::size_t m = p.family == CurvePiece::Family::Radical ? 6 : 5;
        for (std::size_t j = 0; j < m; ++j) coef.push_back(out::real(p.coef[j]));
        pieces.push_back({{"lower", out::real(lo)},
                          {"upper", out::real(hi)},
                          {"formula", p.formula},
                          {"family", p.family == CurvePiece::Family::Radical ? "radical" : "rational"},
                          {"coefficients", coef}});
        t.add({"h2", "piece" + std::to_string(i + 1), r(lo), r(hi), "", p.formula});
      }
      res["h2_pieces"] = pieces;
      const std::pair<const char*, const char*> regions[] = {{"A1", "min(x1, x2)"},
                                                             {"A2", "max(x1, x2)"},
                                                             {"B1", "(3 - x1 - x2)/2"},
                                                             {"B2", "(2 - x1 - x2)/2"},
                                                             {"B3", "(1 - x1 - x2)/2"}};
      Json h3j = Json::object();
      for (const auto& [name, form] : regions) {
        h3j[name] = form;
        t.add({"h3", name, "", "", "", form});
      }
      res["h3_regions"] = h3j;
      break;
    }
    default:
      throw input_error("unsupported horizon " + std::to_string(n) + " for closed-form thresholds; supported: 2, 3, 4");
  }
  return {render("thresholds", {{"n", n}}, res, t, fmt)};
}

// ---------------------------------------------------------------------------

/// Equally spaced x1 grid with the five breakpoints inserted as extra rows.
inline std::vector<double> h2_curve_abscissae(int samples) {
  if (samples < 2) throw input_error("samples must be >= 2");
  std::vector<double> xs;
  for (int i = 0; i < samples; ++i) xs.push_back(static_cast<double>(i) / (samples - 1));
  const auto be = betas();
  xs.insert(xs.end(), be.b.begin(), be.b.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

inline Output h2_curve_cmd(int samples, Format fmt) {
  CsvTable t({"x1", "h2"});
  Json rows = Json::array();
  for (double x : h2_curve_abscissae(samples)) {
    const double h = h2(x);
    t.add({out::format_real(x), out::format_real(h)});
    rows.push_back(Json::array({out::real(x), out::real(h)}));
  }
  return {render("h2-curve", {{"samples", samples}}, Json{{"columns", {"x1", "h2"}}, {"rows", rows}}, t, fmt)};
}

// ---------------------------------------------------------------------------

inline Output regions(int grid, Format fmt) {
  if (grid < 2) throw input_error("grid must be >= 2");
  CsvTable t({"x1", "x2", "region"});
  Json rows = Json::array();
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double x1 = (i + 0.5) / grid, x2 = (j + 0.5) / grid;
      const auto label = std::string(to_string(classify_region(x1, x2)));
      t.add({out::format_real(x1), out::format_real(x2), label});
      rows.push_back(Json::array({out::real(x1), out::real(x2), label}));
    }
  return {render("regions", {{"grid", grid}}, Json{{"columns", {"x1", "x2", "region"}}, {"rows", rows}}, t, fmt)};
}

// ---------------------------------------------------------------------------

inline Output simulate(const std::string& policy_id, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                       Format fmt) {
  if (trials < 1) throw input_error("trials must be >= 1");
  auto resolved = resolve_policy(policy_id);
  const auto r = evaluate(resolved.policy, trials, seed, SimOptions{workers});
  Json counts = Json::array();
  for (auto c : r.rank_counts) counts.push_back(c);
  // worker count is deliberately absent: output must not depend on it
  Json params{{"policy", resolved.params}, {"seed", seed}, {"trials", trials}};
  Json res{{"mean", out::real(r.mean)},
           {"std_error", out::real(r.std_error)},
           {"trials", r.trials},
           {"seed", r.seed},
           {"policy_id", r.policy_id},
           {"rank_counts", counts}};
  CsvTable t({"policy", "trials", "seed", "mean", "std_error"});
  t.add({r.policy_id, std::to_string(trials), std::to_string(seed), out::format_real(r.mean),
         out::format_real(r.std_error)});
  return {render("simulate", params, res, t, fmt)};
}

// ---------------------------------------------------------------------------

inline Output verify_cmd(verify::Level level, const std::string& only, Format fmt, const verify::Context& ctx = {}) {
  const auto results = verify::run(level, ctx, only);
  CsvTable t({"check", "passed", "achieved", "required", "detail"});
  Json checks = Json::array();
  Json failures = Json::array();
  bool all = true;
  for (const auto& c : results) {
    all = all && c.passed;
    if (!c.passed) failures.push_back(c.name);
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"achieved", out::real(c.achieved)},
                      {"required", out::real(c.required)},
                      {"detail", c.detail}});
    t.add({c.name, c.passed ? "true" : "false", out::format_real(c.achieved), out::format_real(c.required), c.detail});
  }
  Json params{{"level", level == verify::Level::Full ? "full" : "quick"}};
  if (!only.empty()) params["check"] = only;
  return {render("verify", params, Json{{"checks", checks}, {"failures", failures}, {"passed", all}}, t, fmt),
          all ? kOk : kVerifyFailed};
}

// ---------------------------------------------------------------------------

inline Output noinfo(int max_n, Format fmt) {
  if (max_n < 1 || max_n > 10000) throw input_error("max-n must be in [1, 10000]");
  CsvTable t({"n", "W"});
  Json rows = Json::array();
  for (const auto& [n, w] : w_table(max_n)) {
    t.add({std::to_string(n), out::format_real(w)});
    rows.push_back({{"n", n}, {"W", out::real(w)}});
  }
  return {render("noinfo", {{"max_n", max_n}}, Json{{"rows", rows}}, t, fmt)};
}

// ---------------------------------------------------------------------------

/// Optimal value v(n) by backward induction, for 1 <= n <= 5.
inline Output value(int n, double tol, Format fmt) {
  if (!(tol > 0.0)) throw input_error("tol must be positive");
  const QuadConfig cfg{tol, tol * 1e-3, 30};
  const double v = dp::value_v(n, cfg);
  const bool best_effort = !dp::validated_horizon(n);
  CsvTable t({"n", "v", "best_effort"});
  t.add({std::to_string(n), out::format_real(v), best_effort ? "true" : "false"});
  return {render("value", {{"n", n}, {"tol", out::real(tol)}},
                 Json{{"v", out::real(v)}, {"best_effort", best_effort}}, t, fmt)};
}

}  // namespace robbins::cmd
