#pragma once

// Colon-parameterized policy ids:
//   exact2 | exact3 | exact4
//   memoryless:<n>          optimal memoryless thresholds for horizon n
//   asc:<n>[:<c>]           parametric thresholds; c tuned when omitted
//   stop-first:<n>          always keep X_1
//   thresholds:<a1>,...,1   explicit memoryless thresholds

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "robbins/core.hpp"
#include "robbins/envelope.hpp"
#include "robbins/exact_policy.hpp"
#include "robbins/memoryless.hpp"

namespace robbins {

struct ResolvedPolicy {
  Policy policy;
  nlohmann::json params;  // everything needed to rebuild the policy
};

inline constexpr std::string_view kPolicyRegistry =
    "exact2, exact3, exact4, memoryless:<n>, asc:<n>[:<c>], stop-first:<n>, thresholds:<a1>,...,1";

namespace detail {

inline double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw input_error("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline int parse_horizon(std::string_view s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 1)
    throw input_error("invalid horizon: '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

inline nlohmann::json reals(const std::vector<double>& v) {
  auto j = nlohmann::json::array();
  for (double x : v) j.push_back(out::real(x));
  return j;
}

}  // namespace detail

inline ResolvedPolicy resolve_policy(std::string_view id) {
  using nlohmann::json;
  const auto unknown = [&] {
    return input_error("unknown policy id '" + std::string(id) + "'; known: " + std::string(kPolicyRegistry));
  };
  if (id == "exact2") return {policy2(), json{{"id", "exact2"}, {"horizon", 2}, {"h1", out::real(0.5)}}};
  if (id == "exact3")
    return {policy3(), json{{"id", "exact3"}, {"horizon", 3}, {"h1", out::real(constants3().a)}}};
  if (id == "exact4")
    return {policy4(), json{{"id", "exact4"}, {"horizon", 4}, {"h1", out::real(h1_constant4())}}};

  const auto colon = id.find(':');
  if (colon == std::string_view::npos) throw unknown();
  const auto kind = id.substr(0, colon);
  const auto rest = id.substr(colon + 1);

  if (kind == "stop-first") {
    const int n = detail::parse_horizon(rest);
    return {stop_first_policy(n), json{{"id", std::string(id)}, {"horizon", n}}};
  }
  if (kind == "memoryless") {
    const int n = detail::parse_horizon(rest);
    const auto opt = optimize(n);
    return {memoryless_policy(opt.thresholds, std::string(id)),
            json{{"id", std::string(id)},
                 {"horizon", n},
                 {"thresholds", detail::reals(opt.thresholds.values())},
                 {"expected_rank", out::real(opt.value)}}};
  }
  if (kind == "asc") {
    const auto parts = detail::split(rest, ':');
    if (parts.size() > 2) throw unknown();
    const int n = detail::parse_horizon(parts[0]);
    ASCCoefficients co;
    bool tuned = false;
    if (parts.size() == 2) {
      co.c = detail::parse_real(parts[1], "ASC offset c");
    } else {
      co.c = tune_asc_offset(n, co).c;
      tuned = true;
    }
    const auto tv = asc_thresholds(n, co);
    return {memoryless_policy(tv, std::string(id)),
            json{{"id", std::string(id)},
                 {"horizon", n},
                 {"c0", out::real(co.c0)},
                 {"c1", out::real(co.c1)},
                 {"c2", out::real(co.c2)},
                 {"c", out::real(co.c)},
                 {"c_tuned", tuned},
                 {"expected_rank", out::real(expected_rank(tv))}}};
  }
  if (kind == "thresholds") {
    std::vector<double> a;
    for (auto p : detail::split(rest, ',')) a.push_back(detail::parse_real(p, "threshold"));
    ThresholdVector tv(std::move(a));
    return {memoryless_policy(tv, std::string(id)),
            json{{"id", std::string(id)},
                 {"horizon", tv.n()},
                 {"thresholds", detail::reals(tv.values())},
                 {"expected_rank", out::real(expected_rank(tv))}}};
  }
  throw unknown();
}

}  // namespace robbins
