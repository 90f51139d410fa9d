// Paired comparison of the optimal n = 4 rule against the best memoryless
// rule and the "keep the first" baseline, on common random sequences.

#include <cstdio>

#include "robbins/robbins.hpp"

int main() {
  using namespace robbins;
  const auto memoryless = optimize(4);
  const auto result = compare({policy4(), memoryless_policy(memoryless.thresholds), stop_first_policy(4)},
                              1'000'000, 7);

  std::printf("%-40s %10s %10s\n", "policy", "mean", "stderr");
  for (const auto& r : result.results) std::printf("%-40s %10.5f %10.5f\n", r.policy_id.c_str(), r.mean, r.std_error);

  std::printf("\npaired differences (exact4 minus other):\n");
  for (const auto& d : result.differences)
    std::printf("  vs %-36s %+10.5f +- %.5f\n", d.policy_id.c_str(), d.mean, d.std_error);

  std::printf("\nreference: v(4) = %.6f (backward induction), V(4) = %.6f (memoryless optimum)\n",
              dp::value_v(4), memoryless.value);
}
