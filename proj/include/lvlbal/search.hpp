#pragma once

#include <vector>

#include "lvlbal/balance.hpp"
#include "lvlbal/swap.hpp"

namespace lvlbal {

struct SearchBudget {
  // Balance evaluations, including the one of the starting level.
  int max_evals = 100;
  bool stop_on_balanced = true;
  // Evaluate every candidate with the same seed family. When false, the
  // k-th evaluation uses derive_seed(base_seed, k).
  bool common_random_numbers = true;

  void validate() const;
  friend bool operator==(const SearchBudget&, const SearchBudget&) = default;
};

struct SwapTraceEntry {
  SwapAction swap;
  bool accepted = false;
  BalanceEstimate after;
};

struct BalancerResult {
  Level final_level;
  BalanceEstimate initial;
  BalanceEstimate final;
  int evals_used = 0;
  std::vector<SwapTraceEntry> trace;

  double initial_b() const { return initial.b(); }
  double final_b() const { return final.b(); }
};

// Pure random search: applies uniformly random swaps without ever reverting,
// evaluating after each one.
BalancerResult random_balancer(const Level& level, const ArchetypeSpec& p1,
                               const ArchetypeSpec& p2, const EvalConfig& cfg,
                               const SearchBudget& budget, Rng& rng);

// Random-position hill climbing: a candidate swap is kept only when it
// strictly reduces |b - 0.5|; otherwise the level reverts.
BalancerResult hill_climb(const Level& level, const ArchetypeSpec& p1, const ArchetypeSpec& p2,
                          const EvalConfig& cfg, const SearchBudget& budget, Rng& rng);

}  // namespace lvlbal
