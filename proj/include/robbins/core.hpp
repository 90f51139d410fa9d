#pragma once

// Shared types for the full-information expected-rank stopping problem:
// error types, the threshold-policy abstraction, play(), and a counter-based
// random stream whose output depends only on (seed, stream id, position).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace robbins {

/// Malformed arguments: wrong lengths, values outside [0,1], bad horizons.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical routine gave up. Carries the best value it reached
/// and the error or tolerance actually achieved.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double best, double achieved)
      : std::runtime_error(what), best_(best), achieved_(achieved) {}
  double best() const noexcept { return best_; }
  double achieved() const noexcept { return achieved_; }

 private:
  double best_;
  double achieved_;
};

namespace detail {

inline void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw input_error(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
}

inline void require_unit(std::span<const double> xs, const char* what) {
  for (double x : xs) require_unit(x, what);
}

}  // namespace detail

struct Rank {
  int value = 1;
  friend bool operator==(Rank, Rank) = default;
};

enum class Decision { Stop, Continue };

/// Read-only view of the values observed so far, in arrival order.
/// The step about to be played is history.size() + 1.
using HistoryView = std::span<const double>;

/// Threshold function: (step k, history of length k-1) -> threshold in [0,1].
using ThresholdFn = std::function<double(int, HistoryView)>;

/// A stopping rule of threshold type over a fixed horizon. X_k is kept iff
/// X_k <= threshold(k, X_1..X_{k-1}); the last step always stops.
class Policy {
 public:
  Policy(std::string id, int horizon, ThresholdFn threshold)
      : id_(std::move(id)), horizon_(horizon), threshold_(std::move(threshold)) {
    if (horizon_ < 1) throw input_error("policy horizon must be >= 1");
    if (!threshold_) throw input_error("policy needs a threshold function");
  }

  const std::string& id() const noexcept { return id_; }
  int horizon() const noexcept { return horizon_; }

  double threshold(int step, HistoryView history) const {
    if (step < 1 || step > horizon_) throw input_error("step outside [1, horizon]");
    if (static_cast<int>(history.size()) != step - 1)
      throw input_error("history length must equal step - 1");
    if (step == horizon_) return 1.0;
    return threshold_(step, history);
  }

  Decision decide(int step, HistoryView history, double x) const {
    if (step == horizon_) return Decision::Stop;
    return x <= threshold(step, history) ? Decision::Stop : Decision::Continue;
  }

 private:
  std::string id_;
  int horizon_;
  ThresholdFn threshold_;
};

/// Rank of sequence[index] within the whole sequence: 1 + #{i != index : X_i <= X_index}.
inline Rank overall_rank(std::span<const double> sequence, std::size_t index) {
  const double x = sequence[index];
  int r = 1;
  for (std::size_t i = 0; i < sequence.size(); ++i)
    if (i != index && sequence[i] <= x) ++r;
  return Rank{r};
}

struct PlayResult {
  int index;  // 1-based
  Rank rank;
};

/// Run a policy over a full sequence. Returns the first step where it stops.
inline PlayResult play(const Policy& policy, std::span<const double> sequence) {
  const int n = policy.horizon();
  if (static_cast<int>(sequence.size()) != n)
    throw input_error("sequence length " + std::to_string(sequence.size()) +
                      " does not match policy horizon " + std::to_string(n));
  detail::require_unit(sequence, "observation");
  for (int k = 1; k <= n; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    if (policy.decide(k, sequence.first(idx), sequence[idx]) == Decision::Stop)
      return {k, overall_rank(sequence, idx)};
  }
  // decide() always stops at k == n
  return {n, overall_rank(sequence, static_cast<std::size_t>(n - 1))};
}

// ---------------------------------------------------------------------------
// Counter-based random stream.
//
// Sample i of stream (seed, id) is
//     mix64(key + (i + 1) * 0x9E3779B97F4A7C15),
//     key = mix64(seed ^ mix64(id + 0xD1B54A32D192ED03)),
// where mix64 is the SplitMix64 finalizer (Stafford variant 13). Doubles use
// the top 53 bits: u = (bits >> 11) * 2^-53, so u lies in [0, 1).
// There is no hidden state beyond the position counter, so trial t can be
// regenerated anywhere, by any thread, from (seed, t) alone.
// ---------------------------------------------------------------------------

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class RandomStream {
 public:
  constexpr RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id),
        key_(mix64(seed ^ mix64(stream_id + 0xD1B54A32D192ED03ULL))) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Raw 64-bit sample at a given position; does not advance.
  constexpr std::uint64_t bits_at(std::uint64_t position) const noexcept {
    return mix64(key_ + (position + 1) * 0x9E3779B97F4A7C15ULL);
  }

  constexpr std::uint64_t next_bits() noexcept { return bits_at(counter_++); }

  constexpr double next_uniform() noexcept {
    return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Fill `out` with uniform samples from a fresh copy of `stream`.
inline void fill_uniform(RandomStream stream, std::span<double> out) {
  for (double& x : out) x = stream.next_uniform();
}

inline std::vector<double> uniform_sequence(const RandomStream& stream, int n) {
  if (n < 1) throw input_error("sequence length must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  fill_uniform(stream, out);
  return out;
}

// ---------------------------------------------------------------------------
// Simple policies used as baselines throughout.
// ---------------------------------------------------------------------------

/// Always keep the first observation.
inline Policy stop_first_policy(int n) {
  return Policy("stop-first:" + std::to_string(n), n, [](int, HistoryView) { return 1.0; });
}

}  // namespace robbins
