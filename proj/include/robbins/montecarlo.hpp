#pragma once

// Seeded Monte Carlo evaluation of policies. Trial t always draws its
// sequence from RandomStream(seed, t), and all accumulators are integers, so
// results do not depend on how trials are split across threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "robbins/core.hpp"

namespace robbins {

struct SimResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string policy_id;
  std::vector<std::uint64_t> rank_counts;  // rank_counts[r-1] = #trials with rank r
};

/// Paired statistics of rank(policy 0) - rank(policy i) on common sequences.
struct PairedDifference {
  std::string policy_id;
  std::string baseline_id;
  double mean = 0.0;
  double std_error = 0.0;
};

struct CompareResult {
  std::vector<SimResult> results;
  std::vector<PairedDifference> differences;  // one per policy after the first
};

struct SimOptions {
  unsigned workers = 0;                  // 0: hardware concurrency
  std::uint64_t chunk_trials = 1u << 16;  // trials per work unit
};

namespace detail {

struct Moments {
  std::int64_t sum = 0;
  std::uint64_t sum_sq = 0;

  void add(std::int64_t v) {
    sum += v;
    sum_sq += static_cast<std::uint64_t>(v * v);
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  // exact integer arithmetic up to the final division
  double mean(std::uint64_t t) const { return static_cast<double>(sum) / static_cast<double>(t); }
  double standard_error(std::uint64_t t) const {
    if (t < 2) return 0.0;
    const __int128 tt = static_cast<__int128>(t);
    const __int128 num = tt * static_cast<__int128>(sum_sq) - static_cast<__int128>(sum) * sum;
    const double var = static_cast<double>(num) / (static_cast<double>(t) * static_cast<double>(t - 1));
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(t));
  }
};

struct ChunkTally {
  std::vector<Moments> ranks;      // per policy
  std::vector<Moments> diffs;      // per policy, policy 0 minus policy i
  std::vector<std::vector<std::uint64_t>> hist;
};

inline unsigned resolve_workers(unsigned w) {
  if (w != 0) return w;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

inline CompareResult run_trials(const std::vector<Policy>& policies, std::uint64_t trials, std::uint64_t seed,
                                const SimOptions& opt) {
  if (policies.empty()) throw input_error("need at least one policy");
  if (trials < 1) throw input_error("trials must be >= 1");
  if (opt.chunk_trials < 1) throw input_error("chunk size must be >= 1");
  const int n = policies.front().horizon();
  for (const auto& p : policies)
    if (p.horizon() != n) throw input_error("policies must share one horizon (" + p.id() + ")");
  const std::size_t m = policies.size();

  const std::uint64_t chunks = (trials + opt.chunk_trials - 1) / opt.chunk_trials;
  std::vector<ChunkTally> tallies(static_cast<std::size_t>(chunks));
  std::atomic<std::uint64_t> next{0};

  auto work = [&] {
    std::vector<double> seq(static_cast<std::size_t>(n));
    std::vector<std::int64_t> r(m);
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
      ChunkTally tally{std::vector<Moments>(m), std::vector<Moments>(m),
                       std::vector<std::vector<std::uint64_t>>(m, std::vector<std::uint64_t>(static_cast<std::size_t>(n)))};
      const std::uint64_t lo = c * opt.chunk_trials, hi = std::min(trials, lo + opt.chunk_trials);
      for (std::uint64_t t = lo; t < hi; ++t) {
        fill_uniform(RandomStream(seed, t), seq);
        for (std::size_t i = 0; i < m; ++i) {
          r[i] = play(policies[i], seq).rank.value;
          tally.ranks[i].add(r[i]);
          tally.diffs[i].add(r[0] - r[i]);
          ++tally.hist[i][static_cast<std::size_t>(r[i] - 1)];
        }
      }
      tallies[static_cast<std::size_t>(c)] = std::move(tally);
    }
  };

  const unsigned workers = std::min<std::uint64_t>(resolve_workers(opt.workers), chunks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::vector<Moments> ranks(m), diffs(m);
  std::vector<std::vector<std::uint64_t>> hist(m, std::vector<std::uint64_t>(static_cast<std::size_t>(n)));
  for (const auto& t : tallies)
    for (std::size_t i = 0; i < m; ++i) {
      ranks[i].merge(t.ranks[i]);
      diffs[i].merge(t.diffs[i]);
      for (std::size_t r = 0; r < hist[i].size(); ++r) hist[i][r] += t.hist[i][r];
    }

  CompareResult out;
  for (std::size_t i = 0; i < m; ++i)
    out.results.push_back({ranks[i].mean(trials), ranks[i].standard_error(trials), trials, seed, policies[i].id(),
                           std::move(hist[i])});
  for (std::size_t i = 1; i < m; ++i)
    out.differences.push_back(
        {policies[i].id(), policies[0].id(), diffs[i].mean(trials), diffs[i].standard_error(trials)});
  return out;
}

}  // namespace detail

inline SimResult evaluate(const Policy& policy, std::uint64_t trials, std::uint64_t seed, const SimOptions& opt = {}) {
  return std::move(detail::run_trials({policy}, trials, seed, opt).results.front());
}

/// Common random numbers: trial t feeds the same sequence to every policy.
inline CompareResult compare(const std::vector<Policy>& policies, std::uint64_t trials, std::uint64_t seed,
                             const SimOptions& opt = {}) {
  return detail::run_trials(policies, trials, seed, opt);
}

}  // namespace robbins
