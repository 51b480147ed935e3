#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lvlbal/dataset.hpp"
#include "lvlbal/game.hpp"

namespace lvlbal {

struct DrawBreakdown {
  int timeout = 0;
  int mutual_death = 0;
  int mutual_goal = 0;

  int total() const { return timeout + mutual_death + mutual_goal; }
  friend bool operator==(const DrawBreakdown&, const DrawBreakdown&) = default;
};

// Outcome counts over n simulated matches and the balance score
//   b = (wins1 + draws / 2) / n.
// b is a multiple of 1 / (2n); score_halves() is its exact numerator.
class BalanceEstimate {
 public:
  BalanceEstimate(int n_sims, int wins1, int wins2, DrawBreakdown draws);

  int n_sims() const { return n_sims_; }
  int wins1() const { return wins1_; }
  int wins2() const { return wins2_; }
  int draws() const { return draws_.total(); }
  const DrawBreakdown& draw_breakdown() const { return draws_; }

  double b() const { return static_cast<double>(score_halves()) / (2.0 * n_sims_); }
  // 2 * wins1 + draws
  int score_halves() const { return 2 * wins1_ + draws(); }
  // |b - 0.5| in units of 1 / (2n)
  int imbalance_halves() const;
  double imbalance() const { return static_cast<double>(imbalance_halves()) / (2.0 * n_sims_); }
  double draw_fraction() const { return static_cast<double>(draws()) / n_sims_; }

  friend bool operator==(const BalanceEstimate&, const BalanceEstimate&) = default;

 private:
  int n_sims_;
  int wins1_;
  int wins2_;
  DrawBreakdown draws_;
};

struct EvalConfig {
  int n_sims = 10;
  std::uint64_t base_seed = 0;
  double epsilon = 0.0;
  MatchConfig match;

  void validate() const;
  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

// Seed of simulation `index` within a family; prefix-stable in n_sims.
std::uint64_t simulation_seed(std::uint64_t base_seed, int index);

// Runs cfg.n_sims matches with seeds simulation_seed(base_seed, i). Draws of
// every kind count one half, including matches nobody could win.
BalanceEstimate estimate_balance(const Level& level, const ArchetypeSpec& p1,
                                 const ArchetypeSpec& p2, const EvalConfig& cfg);

enum class BalanceClass { Balanced, FavorsP1, FavorsP2 };

std::string_view class_name(BalanceClass c);

// Balanced iff |b - 0.5| <= epsilon (inclusive). Compared on the exact
// rational so that boundaries such as b = 0.55, epsilon = 0.05 are balanced.
BalanceClass classify(const BalanceEstimate& est, double epsilon);
bool is_balanced(const BalanceEstimate& est, double epsilon);

struct ImbalanceSummary {
  double frac_favor1 = 0.0;
  double frac_favor2 = 0.0;
  double frac_balanced = 0.0;
  std::vector<BalanceEstimate> estimates;
  std::vector<BalanceClass> classes;

  // Share of the unbalanced levels that favor player 1 (0.5 if none are unbalanced).
  double favor1_share() const;
  // Share of the unbalanced levels that favor whichever player is favored more often.
  double initial_imbalance() const;
};

// Evaluates every record with base seed level_seed(cfg.base_seed, index).
// `threads` == 0 picks the hardware concurrency. Throws UsageError on an empty dataset.
ImbalanceSummary dataset_imbalance(const LevelDataset& ds, const ArchetypeSpec& p1,
                                   const ArchetypeSpec& p2, const EvalConfig& cfg,
                                   unsigned threads = 0);

// Base seed used for record `index` of a dataset run.
std::uint64_t level_seed(std::uint64_t base_seed, std::size_t index);

// Calls fn(i) for i in [0, n) over a pool of worker threads. Exceptions are
// rethrown on the caller (the first one wins).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace lvlbal
