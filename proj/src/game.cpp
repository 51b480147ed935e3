#include "lvlbal/game.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <ostream>
#include <queue>

#include "lvlbal/errors.hpp"

namespace lvlbal {

void ArchetypeSpec::validate() const {
  if (action_period < 1) throw ConfigError("archetype " + name + ": action_period must be >= 1");
  if (food_to_win < 1) throw ConfigError("archetype " + name + ": food_to_win must be >= 1");
}

namespace archetypes {
ArchetypeSpec base() { return {"A", false, 1, 5}; }
ArchetypeSpec rock() { return {"B", true, 1, 5}; }
ArchetypeSpec handicap() { return {"C", false, 2, 5}; }
ArchetypeSpec food4() { return {"D1", false, 1, 4}; }
ArchetypeSpec food3() { return {"D2", false, 1, 3}; }
}  // namespace archetypes

ArchetypeSpec archetype_preset(std::string_view code) {
  if (code == "A") return archetypes::base();
  if (code == "B") return archetypes::rock();
  if (code == "C") return archetypes::handicap();
  if (code == "D1") return archetypes::food4();
  if (code == "D2") return archetypes::food3();
  throw ConfigError("unknown archetype '" + std::string(code) + "' (expected A, B, C, D1 or D2)");
}

const std::vector<std::string>& preset_codes() {
  static const std::vector<std::string> codes = {"A", "B", "C", "D1", "D2"};
  return codes;
}

RuntimeTile to_runtime(TileKind kind) {
  switch (kind) {
    case TileKind::Grass:
      return RuntimeTile::Grass;
    case TileKind::Rock:
      return RuntimeTile::Rock;
    case TileKind::Water:
      return RuntimeTile::Water;
    case TileKind::Food:
      return RuntimeTile::Food;
  }
  return RuntimeTile::Grass;
}

char runtime_glyph(RuntimeTile tile) {
  switch (tile) {
    case RuntimeTile::Grass:
      return 'G';
    case RuntimeTile::Rock:
      return 'R';
    case RuntimeTile::Water:
      return 'W';
    case RuntimeTile::Food:
      return 'F';
    case RuntimeTile::Scrub:
      return 'S';
  }
  return '?';
}

std::string_view action_name(Action a) {
  switch (a) {
    case Action::Up:
      return "Up";
    case Action::Down:
      return "Down";
    case Action::Left:
      return "Left";
    case Action::Right:
      return "Right";
    case Action::DoNothing:
      return "DoNothing";
  }
  return "?";
}

Position moved(Position p, Action a) {
  switch (a) {
    case Action::Up:
      return {p.x, p.y - 1};
    case Action::Down:
      return {p.x, p.y + 1};
    case Action::Left:
      return {p.x - 1, p.y};
    case Action::Right:
      return {p.x + 1, p.y};
    case Action::DoNothing:
      break;
  }
  return p;
}

RuntimeGrid::RuntimeGrid(const Level& level)
    : width_(level.width()), height_(level.height()), tiles_(level.area()) {
  std::transform(level.tiles().begin(), level.tiles().end(), tiles_.begin(), to_runtime);
}

RuntimeGrid::RuntimeGrid(int width, int height, std::vector<RuntimeTile> tiles)
    : width_(width), height_(height), tiles_(std::move(tiles)) {
  if (width < 1 || height < 1 ||
      tiles_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ConfigError("runtime grid: tile count does not match dimensions");
  }
}

std::size_t RuntimeGrid::count(RuntimeTile t) const {
  return static_cast<std::size_t>(std::count(tiles_.begin(), tiles_.end(), t));
}

bool RuntimeGrid::adjacent_to_water(Position p) const {
  for (Action a : kMoves) {
    const Position n = moved(p, a);
    if (in_bounds(n) && at(n) == RuntimeTile::Water) return true;
  }
  return false;
}

bool passable(RuntimeTile tile, const ArchetypeSpec& arch) {
  switch (tile) {
    case RuntimeTile::Grass:
    case RuntimeTile::Food:
    case RuntimeTile::Scrub:
      return true;
    case RuntimeTile::Rock:
      return arch.can_cross_rock;
    case RuntimeTile::Water:
      return false;
  }
  return false;
}

namespace {

struct OpenEntry {
  int f;
  int h;
  std::uint32_t seq;
  int node;

  bool operator>(const OpenEntry& o) const {
    if (f != o.f) return f > o.f;
    if (h != o.h) return h > o.h;
    return seq > o.seq;
  }
};

// Reused per thread; the simulation calls this twice per player per turn.
struct SearchScratch {
  std::vector<int> g;
  std::vector<int> h;
  std::vector<int> parent;
  std::vector<std::uint8_t> closed;
  std::vector<std::uint8_t> is_goal;
  std::vector<OpenEntry> heap;

  void reset(std::size_t n) {
    g.assign(n, INT_MAX);
    h.assign(n, INT_MAX);
    parent.assign(n, -1);
    closed.assign(n, 0);
    is_goal.assign(n, 0);
    heap.clear();
  }
};

}  // namespace

std::optional<Path> shortest_path(const RuntimeGrid& grid, Position from,
                                  std::span<const Position> goals, const ArchetypeSpec& arch) {
  if (!grid.in_bounds(from)) throw std::out_of_range("shortest_path: start out of bounds");

  thread_local SearchScratch s;
  const std::size_t n = grid.area();
  s.reset(n);

  thread_local std::vector<Position> goal_cells;
  goal_cells.clear();
  for (Position gp : goals) {
    if (!grid.in_bounds(gp)) continue;
    const std::size_t gi = grid.index(gp);
    if (s.is_goal[gi] || (gp != from && !passable(grid.at(gp), arch))) continue;
    s.is_goal[gi] = 1;
    goal_cells.push_back(gp);
  }
  if (goal_cells.empty()) return std::nullopt;

  for (std::size_t i = 0; i < n; ++i) {
    const Position p = grid.position_of(i);
    int best = INT_MAX;
    for (Position gp : goal_cells) best = std::min(best, std::abs(p.x - gp.x) + std::abs(p.y - gp.y));
    s.h[i] = best;
  }

  const auto push = [&](OpenEntry e) {
    s.heap.push_back(e);
    std::push_heap(s.heap.begin(), s.heap.end(), std::greater<>{});
  };
  const auto pop = [&] {
    std::pop_heap(s.heap.begin(), s.heap.end(), std::greater<>{});
    OpenEntry e = s.heap.back();
    s.heap.pop_back();
    return e;
  };

  std::uint32_t seq = 0;
  const int start = static_cast<int>(grid.index(from));
  s.g[static_cast<std::size_t>(start)] = 0;
  push({s.h[static_cast<std::size_t>(start)], s.h[static_cast<std::size_t>(start)], seq++, start});

  int best_cost = INT_MAX;
  int best_goal = -1;
  while (!s.heap.empty()) {
    const OpenEntry top = pop();
    if (top.f > best_cost) break;
    const auto u = static_cast<std::size_t>(top.node);
    if (s.closed[u]) continue;
    s.closed[u] = 1;

    if (s.is_goal[u]) {
      // Consistent heuristic: every goal at the optimal cost is popped before
      // any entry with a larger f, so keep draining to find the row-major first.
      best_cost = s.g[u];
      if (best_goal < 0 || top.node < best_goal) best_goal = top.node;
      continue;
    }

    const Position p = grid.position_of(u);
    for (Action a : kMoves) {
      const Position q = moved(p, a);
      if (!grid.in_bounds(q) || !passable(grid.at(q), arch)) continue;
      const std::size_t v = grid.index(q);
      if (s.closed[v]) continue;
      const int cand = s.g[u] + 1;
      if (cand < s.g[v]) {
        s.g[v] = cand;
        s.parent[v] = static_cast<int>(u);
        push({cand + s.h[v], s.h[v], seq++, static_cast<int>(v)});
      }
    }
  }
  if (best_goal < 0) return std::nullopt;

  Path path;
  for (int v = best_goal; v != start; v = s.parent[static_cast<std::size_t>(v)]) {
    path.push_back(grid.position_of(static_cast<std::size_t>(v)));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

void MatchConfig::validate() const {
  if (max_turns < 1) throw ConfigError("match: max_turns must be >= 1");
  if (max_health < 1 || max_food < 1 || max_water < 1) {
    throw ConfigError("match: gauge maxima must be >= 1");
  }
  if (!(respawn_prob >= 0.0 && respawn_prob <= 1.0)) {
    throw ConfigError("match: respawn_prob must lie in [0, 1]");
  }
  if (!(regen_threshold_frac >= 0.0 && regen_threshold_frac <= 1.0)) {
    throw ConfigError("match: regen_threshold_frac must lie in [0, 1]");
  }
}

std::string_view winner_name(Winner w) {
  switch (w) {
    case Winner::Player1:
      return "Player1";
    case Winner::Player2:
      return "Player2";
    case Winner::Draw:
      return "Draw";
  }
  return "?";
}

std::string_view cause_name(EndCause c) {
  switch (c) {
    case EndCause::FoodGoal:
      return "FoodGoal";
    case EndCause::Survived:
      return "Survived";
    case EndCause::Timeout:
      return "Timeout";
    case EndCause::MutualDeath:
      return "MutualDeath";
    case EndCause::MutualGoal:
      return "MutualGoal";
  }
  return "?";
}

MatchState::MatchState(const Level& level, ArchetypeSpec p1, ArchetypeSpec p2, MatchConfig cfg)
    : grid(level), archetypes{std::move(p1), std::move(p2)}, config(cfg), rng(cfg.seed) {
  config.validate();
  archetypes[0].validate();
  archetypes[1].validate();
  for (int i = 0; i < 2; ++i) {
    players[static_cast<std::size_t>(i)] = PlayerState{level.spawn(i), config.max_health,
                                                       config.max_food, config.max_water, 0, true};
  }
}

namespace {

Action direction_to(Position from, Position to) {
  if (to.y < from.y) return Action::Up;
  if (to.y > from.y) return Action::Down;
  if (to.x < from.x) return Action::Left;
  if (to.x > from.x) return Action::Right;
  return Action::DoNothing;
}

}  // namespace

Action agent_policy(const MatchState& state, int player) {
  const auto idx = static_cast<std::size_t>(player);
  const PlayerState& me = state.players[idx];
  const ArchetypeSpec& arch = state.archetypes[idx];
  if (!me.alive || !arch.acts_on(state.turn_index)) return Action::DoNothing;

  const RuntimeGrid& grid = state.grid;
  thread_local std::vector<Position> goals;

  goals.clear();
  for (std::size_t i = 0; i < grid.area(); ++i) {
    if (grid.tiles()[i] != RuntimeTile::Food) continue;
    const Position p = grid.position_of(i);
    // Standing on Food only counts when consume_on_stand is set; otherwise the
    // tile underfoot is not a target.
    if (p == me.pos && !state.config.consume_on_stand) continue;
    goals.push_back(p);
  }
  if (auto path = shortest_path(grid, me.pos, goals, arch)) {
    return path->empty() ? Action::DoNothing : direction_to(me.pos, path->front());
  }

  goals.clear();
  for (std::size_t i = 0; i < grid.area(); ++i) {
    const Position p = grid.position_of(i);
    if (passable(grid.tiles()[i], arch) && grid.adjacent_to_water(p)) goals.push_back(p);
  }
  if (auto path = shortest_path(grid, me.pos, goals, arch)) {
    return path->empty() ? Action::DoNothing : direction_to(me.pos, path->front());
  }
  return Action::DoNothing;
}

std::optional<MatchOutcome> adjudicate(const MatchState& state) {
  const auto& p = state.players;
  const auto& a = state.archetypes;
  const std::array<int, 2> vp = {p[0].victory_points, p[1].victory_points};
  const auto make = [&](Winner w, EndCause c) {
    return MatchOutcome{w, state.turn_index, vp, c};
  };

  const bool goal1 = vp[0] >= a[0].food_to_win;
  const bool goal2 = vp[1] >= a[1].food_to_win;
  if (goal1 && goal2) return make(Winner::Draw, EndCause::MutualGoal);
  if (goal1) return make(Winner::Player1, EndCause::FoodGoal);
  if (goal2) return make(Winner::Player2, EndCause::FoodGoal);

  const bool dead1 = p[0].health <= 0;
  const bool dead2 = p[1].health <= 0;
  if (dead1 && dead2) return make(Winner::Draw, EndCause::MutualDeath);
  if (dead1) return make(Winner::Player2, EndCause::Survived);
  if (dead2) return make(Winner::Player1, EndCause::Survived);

  if (state.turn_index >= state.config.max_turns) return make(Winner::Draw, EndCause::Timeout);
  return std::nullopt;
}

TurnReport step_match(MatchState& state) {
  if (state.finished()) throw UsageError("step_match: match already finished");

  TurnReport report;
  report.turn = state.turn_index;
  auto& players = state.players;
  auto& grid = state.grid;
  const MatchConfig& cfg = state.config;

  // Both policies see the same pre-state.
  for (int i = 0; i < 2; ++i) report.chosen[static_cast<std::size_t>(i)] = agent_policy(state, i);

  std::array<bool, 2> entered{};
  for (std::size_t i = 0; i < 2; ++i) {
    const Action a = report.chosen[i];
    const Position target = moved(players[i].pos, a);
    const bool legal = a != Action::DoNothing && grid.in_bounds(target) &&
                       passable(grid.at(target), state.archetypes[i]);
    report.applied[i] = legal ? a : Action::DoNothing;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (report.applied[i] == Action::DoNothing) continue;
    players[i].pos = moved(players[i].pos, report.applied[i]);
    entered[i] = true;
  }

  // Food. A tile shared by two eligible players goes to one of them at random.
  std::array<bool, 2> eligible{};
  for (std::size_t i = 0; i < 2; ++i) {
    eligible[i] = players[i].alive && grid.at(players[i].pos) == RuntimeTile::Food &&
                  (entered[i] || cfg.consume_on_stand);
  }
  if (eligible[0] && eligible[1] && players[0].pos == players[1].pos) {
    const std::size_t loser = uniform_below(state.rng, 2) == 0 ? 1 : 0;
    eligible[loser] = false;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (!eligible[i]) continue;
    players[i].food = cfg.max_food;
    players[i].victory_points += 1;
    grid.set(players[i].pos, RuntimeTile::Scrub);
    report.consumed[i] = players[i].pos;
  }

  const auto regen_food = cfg.regen_threshold_frac * cfg.max_food;
  const auto regen_water = cfg.regen_threshold_frac * cfg.max_water;
  for (auto& pl : players) {
    if (grid.adjacent_to_water(pl.pos)) pl.water = cfg.max_water;

    const bool starving = pl.food == 0 && pl.water == 0;
    pl.food = std::max(pl.food - 1, 0);
    pl.water = std::max(pl.water - 1, 0);
    if (starving) pl.health = std::max(pl.health - 1, 0);

    if (pl.food > regen_food && pl.water > regen_water) {
      pl.health = std::min(pl.health + 1, cfg.max_health);
    }
    pl.alive = pl.health > 0;
  }

  if (cfg.respawn_prob > 0.0) {
    for (std::size_t i = 0; i < grid.area(); ++i) {
      if (grid.tiles()[i] != RuntimeTile::Scrub) continue;
      if (uniform_unit(state.rng) < cfg.respawn_prob) {
        const Position p = grid.position_of(i);
        grid.set(p, RuntimeTile::Food);
        report.respawned.push_back(p);
      }
    }
  }

  state.turn_index += 1;
  state.outcome = adjudicate(state);
  return report;
}

MatchOutcome run_match(const Level& level, const ArchetypeSpec& p1, const ArchetypeSpec& p2,
                       const MatchConfig& config) {
  MatchState state(level, p1, p2, config);
  while (!state.finished()) step_match(state);
  return *state.outcome;
}

MatchOutcome run_match_traced(const Level& level, const ArchetypeSpec& p1,
                              const ArchetypeSpec& p2, const MatchConfig& config,
                              std::ostream& trace) {
  MatchState state(level, p1, p2, config);
  while (!state.finished()) {
    const TurnReport r = step_match(state);
    const auto& pl = state.players;
    trace << r.turn << '\t' << coord_label(pl[0].pos) << '\t' << coord_label(pl[1].pos) << '\t'
          << action_name(r.applied[0]) << ',' << action_name(r.applied[1]) << '\t';
    for (std::size_t i = 0; i < 2; ++i) {
      trace << (i ? "," : "") << pl[i].health << '/' << pl[i].food << '/' << pl[i].water;
    }
    trace << '\t' << pl[0].victory_points << ',' << pl[1].victory_points << '\t';
    bool first = true;
    const auto delta = [&](Position p, char from, char to) {
      trace << (first ? "" : ";") << coord_label(p) << ':' << from << '>' << to;
      first = false;
    };
    for (const auto& c : r.consumed) {
      if (c) delta(*c, 'F', 'S');
    }
    for (Position p : r.respawned) delta(p, 'S', 'F');
    if (first) trace << '-';
    trace << '\n';
  }
  return *state.outcome;
}

}  // namespace lvlbal
