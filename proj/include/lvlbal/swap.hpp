#pragma once

#include <cstdint>
#include <optional>

#include "lvlbal/balance.hpp"
#include "lvlbal/level.hpp"

namespace lvlbal {

// Exchange of two cells. apply_flag is only present for the legacy action
// space, where false means "do not swap".
struct SwapAction {
  Position pos_a;
  Position pos_b;
  std::optional<bool> apply_flag;

  bool is_noop() const { return pos_a == pos_b || apply_flag == false; }
  friend bool operator==(const SwapAction&, const SwapAction&) = default;
};

// Exchanges the contents of the two cells; a spawn marker travels with its
// cell. Throws std::out_of_range for positions outside the level.
Level apply_swap(const Level& level, const SwapAction& action);

// Improvement in distance to perfect balance: |b_prev - 0.5| - |b_next - 0.5|.
double balance_reward(const BalanceEstimate& prev, const BalanceEstimate& next);

// The same reward in exact units of 1 / (2 n_sims). Both estimates must use
// the same n_sims.
int balance_reward_halves(const BalanceEstimate& prev, const BalanceEstimate& next);

// Two distinct cells drawn uniformly.
SwapAction random_swap(const Level& level, Rng& rng);

}  // namespace lvlbal
