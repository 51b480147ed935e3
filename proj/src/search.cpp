#include "lvlbal/search.hpp"

#include "lvlbal/errors.hpp"

namespace lvlbal {

void SearchBudget::validate() const {
  if (max_evals < 1) throw ConfigError("search budget: max_evals must be >= 1");
}

namespace {

class Evaluator {
 public:
  Evaluator(const ArchetypeSpec& p1, const ArchetypeSpec& p2, const EvalConfig& cfg,
            const SearchBudget& budget)
      : p1_(p1), p2_(p2), cfg_(cfg), budget_(budget) {
    cfg_.validate();
    budget_.validate();
  }

  BalanceEstimate operator()(const Level& level) {
    EvalConfig c = cfg_;
    if (!budget_.common_random_numbers) {
      c.base_seed = derive_seed(cfg_.base_seed, static_cast<std::uint64_t>(used_));
    }
    ++used_;
    return estimate_balance(level, p1_, p2_, c);
  }

  int used() const { return used_; }
  bool exhausted() const { return used_ >= budget_.max_evals; }
  bool done(const BalanceEstimate& est) const {
    return budget_.stop_on_balanced && is_balanced(est, cfg_.epsilon);
  }

 private:
  const ArchetypeSpec& p1_;
  const ArchetypeSpec& p2_;
  EvalConfig cfg_;
  SearchBudget budget_;
  int used_ = 0;
};

}  // namespace

BalancerResult random_balancer(const Level& level, const ArchetypeSpec& p1,
                               const ArchetypeSpec& p2, const EvalConfig& cfg,
                               const SearchBudget& budget, Rng& rng) {
  Evaluator eval(p1, p2, cfg, budget);
  const BalanceEstimate initial = eval(level);
  BalancerResult result{level, initial, initial, 0, {}};

  while (!eval.done(result.final) && !eval.exhausted()) {
    const SwapAction swap = random_swap(result.final_level, rng);
    result.final_level = apply_swap(result.final_level, swap);
    result.final = eval(result.final_level);
    result.trace.push_back({swap, true, result.final});
  }
  result.evals_used = eval.used();
  return result;
}

BalancerResult hill_climb(const Level& level, const ArchetypeSpec& p1, const ArchetypeSpec& p2,
                          const EvalConfig& cfg, const SearchBudget& budget, Rng& rng) {
  Evaluator eval(p1, p2, cfg, budget);
  const BalanceEstimate initial = eval(level);
  BalancerResult result{level, initial, initial, 0, {}};

  while (!eval.done(result.final) && !eval.exhausted()) {
    const SwapAction swap = random_swap(result.final_level, rng);
    Level candidate = apply_swap(result.final_level, swap);
    const BalanceEstimate est = eval(candidate);
    const bool accept = balance_reward(result.final, est) > 0.0;
    if (accept) {
      result.final_level = std::move(candidate);
      result.final = est;
    }
    result.trace.push_back({swap, accept, est});
  }
  result.evals_used = eval.used();
  return result;
}

}  // namespace lvlbal
