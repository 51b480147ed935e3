#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvlbal/level.hpp"
#include "lvlbal/random.hpp"

namespace lvlbal {

// Capabilities of a heuristic player. Every archetype runs the same greedy
// forage policy; they differ only in these three knobs.
struct ArchetypeSpec {
  std::string name;
  bool can_cross_rock = false;
  // Acts on turns where turn_index % action_period == 0.
  int action_period = 1;
  int food_to_win = 5;

  void validate() const;
  bool acts_on(int turn_index) const { return turn_index % action_period == 0; }

  friend bool operator==(const ArchetypeSpec&, const ArchetypeSpec&) = default;
};

namespace archetypes {
ArchetypeSpec base();      // A
ArchetypeSpec rock();      // B
ArchetypeSpec handicap();  // C
ArchetypeSpec food4();     // D1
ArchetypeSpec food3();     // D2
}  // namespace archetypes

// Preset by short code: "A", "B", "C", "D1", "D2". Throws ConfigError.
ArchetypeSpec archetype_preset(std::string_view code);
const std::vector<std::string>& preset_codes();

enum class RuntimeTile : std::uint8_t { Grass, Rock, Water, Food, Scrub };

RuntimeTile to_runtime(TileKind kind);
char runtime_glyph(RuntimeTile tile);

enum class Action : std::uint8_t { Up, Down, Left, Right, DoNothing };

inline constexpr std::array<Action, 4> kMoves = {Action::Up, Action::Down, Action::Left,
                                                 Action::Right};

std::string_view action_name(Action a);
Position moved(Position p, Action a);

class RuntimeGrid {
 public:
  explicit RuntimeGrid(const Level& level);
  RuntimeGrid(int width, int height, std::vector<RuntimeTile> tiles);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t area() const { return tiles_.size(); }
  bool in_bounds(Position p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }
  std::size_t index(Position p) const { return static_cast<std::size_t>(p.y * width_ + p.x); }
  Position position_of(std::size_t i) const {
    return {static_cast<int>(i) % width_, static_cast<int>(i) / width_};
  }

  RuntimeTile at(Position p) const { return tiles_[index(p)]; }
  void set(Position p, RuntimeTile t) { tiles_[index(p)] = t; }
  std::span<const RuntimeTile> tiles() const { return tiles_; }
  std::size_t count(RuntimeTile t) const;

  bool adjacent_to_water(Position p) const;

  friend bool operator==(const RuntimeGrid&, const RuntimeGrid&) = default;

 private:
  int width_;
  int height_;
  std::vector<RuntimeTile> tiles_;
};

bool passable(RuntimeTile tile, const ArchetypeSpec& arch);

// Cells entered in order, excluding the start; empty when the start is a goal.
using Path = std::vector<Position>;

// A* over the 4-connected passable cells with the Manhattan distance to the
// nearest goal as heuristic. Among the closest goals the first in row-major
// order wins. Neighbours expand Up, Down, Left, Right and a cell keeps the
// first parent that reached it at its best cost, so results are reproducible.
// The start cell itself is not required to be passable.
std::optional<Path> shortest_path(const RuntimeGrid& grid, Position from,
                                  std::span<const Position> goals, const ArchetypeSpec& arch);

struct PlayerState {
  Position pos;
  int health = 0;
  int food = 0;
  int water = 0;
  int victory_points = 0;
  bool alive = true;

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct MatchConfig {
  int max_turns = 100;
  int max_health = 10;
  int max_food = 10;
  int max_water = 10;
  double respawn_prob = 0.025;
  double regen_threshold_frac = 0.5;
  // When false, Food is eaten only by moving onto it; standing on a tile that
  // respawns underneath a player does not count.
  bool consume_on_stand = false;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const MatchConfig&, const MatchConfig&) = default;
};

enum class Winner : std::uint8_t { Player1, Player2, Draw };
enum class EndCause : std::uint8_t { FoodGoal, Survived, Timeout, MutualDeath, MutualGoal };

std::string_view winner_name(Winner w);
std::string_view cause_name(EndCause c);

struct MatchOutcome {
  Winner winner = Winner::Draw;
  int turns_played = 0;
  std::array<int, 2> vp{};
  EndCause cause = EndCause::Timeout;

  friend bool operator==(const MatchOutcome&, const MatchOutcome&) = default;
};

// Mutable state of one match. Single owner; fields are public so fixtures can
// build arbitrary positions.
struct MatchState {
  MatchState(const Level& level, ArchetypeSpec p1, ArchetypeSpec p2, MatchConfig cfg);

  RuntimeGrid grid;
  std::array<PlayerState, 2> players;
  std::array<ArchetypeSpec, 2> archetypes;
  MatchConfig config;
  int turn_index = 0;
  Rng rng;
  std::optional<MatchOutcome> outcome;

  bool finished() const { return outcome.has_value(); }
};

// Greedy forager: first step toward the nearest reachable Food, otherwise
// toward the nearest passable cell next to Water, otherwise stay put. Returns
// DoNothing on turns the archetype may not act.
Action agent_policy(const MatchState& state, int player);

// What happened during one step_match call.
struct TurnReport {
  int turn = 0;  // turn_index the step started from
  std::array<Action, 2> chosen{};
  std::array<Action, 2> applied{};  // after illegal moves became DoNothing
  std::array<std::optional<Position>, 2> consumed{};
  std::vector<Position> respawned;
};

// Advances one turn: policies, legality, simultaneous moves, food, water,
// depletion, regeneration, respawn, adjudication. Throws UsageError when the
// match already ended.
TurnReport step_match(MatchState& state);

// Food goal beats death beats timeout. Reads turn_index as the number of turns
// already played.
std::optional<MatchOutcome> adjudicate(const MatchState& state);

MatchOutcome run_match(const Level& level, const ArchetypeSpec& p1, const ArchetypeSpec& p2,
                       const MatchConfig& config);

// Same as run_match, writing one tab-separated line per turn:
// turn, p1 pos, p2 pos, actions, gauges (health/food/water), vp, grid delta.
MatchOutcome run_match_traced(const Level& level, const ArchetypeSpec& p1,
                              const ArchetypeSpec& p2, const MatchConfig& config,
                              std::ostream& trace);

}  // namespace lvlbal
