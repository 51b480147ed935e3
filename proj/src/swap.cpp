#include "lvlbal/swap.hpp"

#include <stdexcept>
#include <vector>

#include "lvlbal/errors.hpp"

namespace lvlbal {

Level apply_swap(const Level& level, const SwapAction& action) {
  if (!level.in_bounds(action.pos_a) || !level.in_bounds(action.pos_b)) {
    throw std::out_of_range("apply_swap: position out of bounds");
  }
  if (action.is_noop()) return level;

  std::vector<TileKind> tiles(level.tiles().begin(), level.tiles().end());
  std::swap(tiles[level.index(action.pos_a)], tiles[level.index(action.pos_b)]);

  const auto relocate = [&](Position spawn) {
    if (spawn == action.pos_a) return action.pos_b;
    if (spawn == action.pos_b) return action.pos_a;
    return spawn;
  };
  return Level(level.width(), level.height(), std::move(tiles), relocate(level.spawn1()),
               relocate(level.spawn2()));
}

int balance_reward_halves(const BalanceEstimate& prev, const BalanceEstimate& next) {
  if (prev.n_sims() != next.n_sims()) {
    throw UsageError("balance_reward_halves: estimates use different n_sims");
  }
  return prev.imbalance_halves() - next.imbalance_halves();
}

double balance_reward(const BalanceEstimate& prev, const BalanceEstimate& next) {
  if (prev.n_sims() == next.n_sims()) {
    return static_cast<double>(balance_reward_halves(prev, next)) / (2.0 * prev.n_sims());
  }
  return prev.imbalance() - next.imbalance();
}

SwapAction random_swap(const Level& level, Rng& rng) {
  const std::uint64_t area = level.area();
  const std::uint64_t a = uniform_below(rng, area);
  std::uint64_t b = uniform_below(rng, area - 1);
  if (b >= a) ++b;
  return SwapAction{level.position_of(a), level.position_of(b), std::nullopt};
}

}  // namespace lvlbal
