// Print the thresholds the optimal n = 4 rule applies along one sequence.

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "robbins/robbins.hpp"

int main(int argc, char** argv) {
  using namespace robbins;
  std::vector<double> seq{0.31, 0.62, 0.18, 0.74};
  if (argc == 5)
    for (int i = 0; i < 4; ++i) seq[static_cast<std::size_t>(i)] = std::strtod(argv[i + 1], nullptr);

  const auto policy = policy4();
  for (int k = 1; k <= 4; ++k) {
    const HistoryView hist(seq.data(), static_cast<std::size_t>(k - 1));
    const double t = policy.threshold(k, hist);
    const double x = seq[static_cast<std::size_t>(k - 1)];
    const bool stop = policy.decide(k, hist, x) == Decision::Stop;
    std::printf("step %d: x = %.4f, threshold = %.6f -> %s\n", k, x, t, stop ? "keep" : "reject");
    if (stop) break;
  }
  const auto r = play(policy, seq);
  std::printf("selected X_%d, overall rank %d\n", r.index, r.rank.value);
}
