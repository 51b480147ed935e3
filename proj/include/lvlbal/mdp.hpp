#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lvlbal/balance.hpp"
#include "lvlbal/swap.hpp"

namespace lvlbal {

// SwapWide predicts [y1, x1, y2, x2]; the legacy variant appends an apply flag.
enum class ActionSpaceVariant { SwapWide, SwapWideLegacy };

std::string_view variant_name(ActionSpaceVariant v);
ActionSpaceVariant parse_variant(std::string_view name);  // "wide" | "legacy"

std::size_t action_space_size(int height, int width, ActionSpaceVariant variant);
std::vector<int> action_components(int height, int width, ActionSpaceVariant variant);

// Component vector -> SwapAction. Throws ConfigError for wrong arity or
// components outside their range.
SwapAction decode_action(std::span<const int> components, int height, int width,
                         ActionSpaceVariant variant);
std::vector<int> encode_action(const SwapAction& action, ActionSpaceVariant variant);

// Cell ids of an observation.
enum class ObsId : std::uint8_t { Grass = 0, Rock = 1, Water = 2, Food = 3, Spawn1 = 4, Spawn2 = 5 };

struct Observation {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> cells;  // row-major ObsId values

  std::uint8_t at(int x, int y) const { return cells[static_cast<std::size_t>(y * width + x)]; }
  friend bool operator==(const Observation&, const Observation&) = default;
};

Observation encode(const Level& level);
// Throws ParseError unless there is exactly one cell of each spawn id and
// every id is in range.
Level decode(const Observation& obs);

enum class CrnPolicy { PerEpisode, PerStep };

struct EnvConfig {
  ActionSpaceVariant variant = ActionSpaceVariant::SwapWide;
  int max_steps = 10;
  EvalConfig eval;
  CrnPolicy crn_policy = CrnPolicy::PerEpisode;
  double terminal_bonus = 0.0;
  // Swaps that touch a spawn cell become no-ops.
  bool freeze_spawns = false;
  ArchetypeSpec player1 = archetypes::base();
  ArchetypeSpec player2 = archetypes::base();

  void validate() const;
};

struct StepInfo {
  double b = 0.5;
  int wins1 = 0;
  int wins2 = 0;
  int draws = 0;
  int steps_used = 0;
  bool balanced = false;
  // Reward without the terminal bonus, in units of 1 / (2 n_sims).
  int reward_halves = 0;
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

// Balancing as fine-tuning: an episode starts from an existing level and each
// step swaps two cells. The reward is the reduction of |b - 0.5|.
class BalanceEnv {
 public:
  explicit BalanceEnv(EnvConfig config);

  // Evaluates the starting level. Under PerEpisode CRN the seed fixes the
  // simulation seed family for the whole episode. reward is 0 and done is
  // false even when the level is already balanced.
  StepResult reset(const Level& level, std::uint64_t seed);

  // Throws UsageError before reset and after the episode ended.
  StepResult step(const SwapAction& action);
  StepResult step(std::span<const int> components);

  const EnvConfig& config() const { return config_; }
  bool active() const { return level_.has_value() && !done_; }
  bool done() const { return done_; }
  int steps_used() const { return steps_; }
  const Level& level() const;
  const BalanceEstimate& estimate() const;

 private:
  BalanceEstimate evaluate(const Level& level) const;
  StepResult make_result(double reward, int reward_halves) const;

  EnvConfig config_;
  std::optional<Level> level_;
  std::optional<BalanceEstimate> estimate_;
  std::uint64_t episode_seed_ = 0;
  int steps_ = 0;
  bool done_ = false;
};

}  // namespace lvlbal
