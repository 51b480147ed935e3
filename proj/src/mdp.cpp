#include "lvlbal/mdp.hpp"

#include <string>

#include "lvlbal/errors.hpp"

namespace lvlbal {

std::string_view variant_name(ActionSpaceVariant v) {
  return v == ActionSpaceVariant::SwapWide ? "wide" : "legacy";
}

ActionSpaceVariant parse_variant(std::string_view name) {
  if (name == "wide") return ActionSpaceVariant::SwapWide;
  if (name == "legacy") return ActionSpaceVariant::SwapWideLegacy;
  throw ConfigError("unknown action-space variant '" + std::string(name) + "'");
}

std::size_t action_space_size(int height, int width, ActionSpaceVariant variant) {
  std::size_t size = 1;
  for (int c : action_components(height, width, variant)) size *= static_cast<std::size_t>(c);
  return size;
}

std::vector<int> action_components(int height, int width, ActionSpaceVariant variant) {
  if (height < 1 || width < 1) throw ConfigError("action space needs h, w >= 1");
  std::vector<int> comps = {height, width, height, width};
  if (variant == ActionSpaceVariant::SwapWideLegacy) comps.push_back(2);
  return comps;
}

SwapAction decode_action(std::span<const int> components, int height, int width,
                         ActionSpaceVariant variant) {
  const auto limits = action_components(height, width, variant);
  if (components.size() != limits.size()) {
    throw ConfigError("action must have " + std::to_string(limits.size()) + " components, got " +
                      std::to_string(components.size()));
  }
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (components[i] < 0 || components[i] >= limits[i]) {
      throw ConfigError("action component " + std::to_string(i) + " out of range [0, " +
                        std::to_string(limits[i]) + ")");
    }
  }
  SwapAction a{{components[1], components[0]}, {components[3], components[2]}, std::nullopt};
  if (variant == ActionSpaceVariant::SwapWideLegacy) a.apply_flag = components[4] == 1;
  return a;
}

std::vector<int> encode_action(const SwapAction& action, ActionSpaceVariant variant) {
  std::vector<int> comps = {action.pos_a.y, action.pos_a.x, action.pos_b.y, action.pos_b.x};
  if (variant == ActionSpaceVariant::SwapWideLegacy) comps.push_back(action.apply_flag.value_or(true) ? 1 : 0);
  return comps;
}

Observation encode(const Level& level) {
  Observation obs{level.width(), level.height(), {}};
  obs.cells.reserve(level.area());
  for (TileKind t : level.tiles()) obs.cells.push_back(static_cast<std::uint8_t>(t));
  obs.cells[level.index(level.spawn1())] = static_cast<std::uint8_t>(ObsId::Spawn1);
  obs.cells[level.index(level.spawn2())] = static_cast<std::uint8_t>(ObsId::Spawn2);
  return obs;
}

Level decode(const Observation& obs) {
  if (obs.width < 2 || obs.height < 2 ||
      obs.cells.size() != static_cast<std::size_t>(obs.width) * static_cast<std::size_t>(obs.height)) {
    throw ParseError("observation shape does not match its cells");
  }
  std::vector<TileKind> tiles;
  tiles.reserve(obs.cells.size());
  std::optional<Position> s1, s2;
  for (std::size_t i = 0; i < obs.cells.size(); ++i) {
    const Position p{static_cast<int>(i) % obs.width, static_cast<int>(i) / obs.width};
    const auto id = obs.cells[i];
    if (id <= static_cast<std::uint8_t>(ObsId::Food)) {
      tiles.push_back(static_cast<TileKind>(id));
      continue;
    }
    if (id > static_cast<std::uint8_t>(ObsId::Spawn2)) {
      throw ParseError("observation id " + std::to_string(id) + " out of range");
    }
    auto& slot = id == static_cast<std::uint8_t>(ObsId::Spawn1) ? s1 : s2;
    if (slot) throw ParseError("observation has more than one cell with spawn id " + std::to_string(id));
    slot = p;
    tiles.push_back(TileKind::Grass);
  }
  if (!s1 || !s2) throw ParseError("observation is missing a spawn cell");
  return Level(obs.width, obs.height, std::move(tiles), *s1, *s2);
}

void EnvConfig::validate() const {
  if (max_steps < 1) throw ConfigError("env: max_steps must be >= 1");
  eval.validate();
  player1.validate();
  player2.validate();
}

BalanceEnv::BalanceEnv(EnvConfig config) : config_(std::move(config)) { config_.validate(); }

const Level& BalanceEnv::level() const {
  if (!level_) throw UsageError("env: no episode (call reset first)");
  return *level_;
}

const BalanceEstimate& BalanceEnv::estimate() const {
  if (!estimate_) throw UsageError("env: no episode (call reset first)");
  return *estimate_;
}

BalanceEstimate BalanceEnv::evaluate(const Level& level) const {
  EvalConfig cfg = config_.eval;
  cfg.base_seed = config_.crn_policy == CrnPolicy::PerEpisode
                      ? episode_seed_
                      : derive_seed(episode_seed_, static_cast<std::uint64_t>(steps_));
  return estimate_balance(level, config_.player1, config_.player2, cfg);
}

StepResult BalanceEnv::make_result(double reward, int reward_halves) const {
  const BalanceEstimate& est = *estimate_;
  StepResult r;
  r.obs = encode(*level_);
  r.reward = reward;
  r.done = done_;
  r.info = StepInfo{est.b(),     est.wins1(), est.wins2(), est.draws(),
                    steps_,      is_balanced(est, config_.eval.epsilon), reward_halves};
  return r;
}

StepResult BalanceEnv::reset(const Level& level, std::uint64_t seed) {
  episode_seed_ = seed;
  steps_ = 0;
  done_ = false;
  level_ = level;
  estimate_ = evaluate(level);
  return make_result(0.0, 0);
}

StepResult BalanceEnv::step(const SwapAction& action) {
  if (!level_) throw UsageError("env: step before reset");
  if (done_) throw UsageError("env: step after episode end");
  if (action.apply_flag.has_value() != (config_.variant == ActionSpaceVariant::SwapWideLegacy)) {
    throw ConfigError("env: apply_flag must be present exactly for the legacy variant");
  }

  SwapAction effective = action;
  if (config_.freeze_spawns) {
    for (Position p : {action.pos_a, action.pos_b}) {
      if (p == level_->spawn1() || p == level_->spawn2()) effective.pos_b = effective.pos_a;
    }
  }
  Level next = apply_swap(*level_, effective);

  ++steps_;
  const BalanceEstimate prev = *estimate_;
  const BalanceEstimate est = evaluate(next);
  const int halves = balance_reward_halves(prev, est);
  double reward = static_cast<double>(halves) / (2.0 * est.n_sims());

  const bool was_balanced = is_balanced(prev, config_.eval.epsilon);
  const bool now_balanced = is_balanced(est, config_.eval.epsilon);
  if (now_balanced && !was_balanced) reward += config_.terminal_bonus;

  level_ = std::move(next);
  estimate_ = est;
  done_ = now_balanced || steps_ >= config_.max_steps;
  return make_result(reward, halves);
}

StepResult BalanceEnv::step(std::span<const int> components) {
  if (!level_) throw UsageError("env: step before reset");
  return step(decode_action(components, level_->height(), level_->width(), config_.variant));
}

}  // namespace lvlbal
