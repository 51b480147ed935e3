#include <gtest/gtest.h>

#include <sstream>

#include "lvlbal/balance.hpp"
#include "lvlbal/errors.hpp"
#include "lvlbal/game.hpp"
#include "oracles.hpp"

using namespace lvlbal;

namespace {

const ArchetypeSpec kA = archetypes::base();
const ArchetypeSpec kB = archetypes::rock();
const ArchetypeSpec kC = archetypes::handicap();

// Builds a level from rows of G/R/W/F with '1' and '2' marking the spawns.
Level level_from(const std::vector<std::string>& rows) {
  std::string text = "  ";
  for (std::size_t x = 0; x < rows[0].size(); ++x) text += static_cast<char>('A' + x);
  text += '\n';
  for (std::size_t y = 0; y < rows.size(); ++y) {
    text += std::to_string(y + 1) + ' ' + rows[y] + '\n';
  }
  return parse_ascii(text);
}

RuntimeGrid grid_from(const std::vector<std::string>& rows) {
  std::vector<RuntimeTile> tiles;
  for (const auto& r : rows) {
    for (char c : r) {
      switch (c) {
        case 'R': tiles.push_back(RuntimeTile::Rock); break;
        case 'W': tiles.push_back(RuntimeTile::Water); break;
        case 'F': tiles.push_back(RuntimeTile::Food); break;
        case 'S': tiles.push_back(RuntimeTile::Scrub); break;
        default: tiles.push_back(RuntimeTile::Grass); break;
      }
    }
  }
  return RuntimeGrid(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()), std::move(tiles));
}

MatchConfig quiet(std::uint64_t seed = 0) {
  MatchConfig cfg;
  cfg.respawn_prob = 0.0;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Archetypes, Presets) {
  EXPECT_EQ(archetype_preset("A"), (ArchetypeSpec{"A", false, 1, 5}));
  EXPECT_EQ(archetype_preset("B"), (ArchetypeSpec{"B", true, 1, 5}));
  EXPECT_EQ(archetype_preset("C"), (ArchetypeSpec{"C", false, 2, 5}));
  EXPECT_EQ(archetype_preset("D1"), (ArchetypeSpec{"D1", false, 1, 4}));
  EXPECT_EQ(archetype_preset("D2"), (ArchetypeSpec{"D2", false, 1, 3}));
  EXPECT_THROW(archetype_preset("E"), ConfigError);
  EXPECT_THROW((ArchetypeSpec{"x", false, 0, 5}.validate()), ConfigError);
  EXPECT_THROW((ArchetypeSpec{"x", false, 1, 0}.validate()), ConfigError);
  EXPECT_TRUE(kC.acts_on(0));
  EXPECT_FALSE(kC.acts_on(1));
  EXPECT_TRUE(kC.acts_on(2));
}

TEST(Passable, Rules) {
  EXPECT_FALSE(passable(RuntimeTile::Rock, kA));
  EXPECT_TRUE(passable(RuntimeTile::Rock, kB));
  EXPECT_FALSE(passable(RuntimeTile::Water, kB));
  EXPECT_FALSE(passable(RuntimeTile::Water, kA));
  for (auto t : {RuntimeTile::Grass, RuntimeTile::Food, RuntimeTile::Scrub}) {
    EXPECT_TRUE(passable(t, kA));
    EXPECT_TRUE(passable(t, kB));
  }
}

TEST(ShortestPath, Corridor) {
  const RuntimeGrid g = grid_from({"GGGF", "RRRR"});
  const std::vector<Position> goals = {{3, 0}};
  const auto p = shortest_path(g, {0, 0}, goals, kA);
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, (Path{{1, 0}, {2, 0}, {3, 0}}));
}

TEST(ShortestPath, FoodRingedByWater) {
  const RuntimeGrid g = grid_from({"GGGGG", "GGWGG", "GWFWG", "GGWGG"});
  const std::vector<Position> goals = {{2, 2}};
  EXPECT_FALSE(shortest_path(g, {0, 0}, goals, kA));
  EXPECT_FALSE(shortest_path(g, {0, 0}, goals, kB));
}

TEST(ShortestPath, RockOnlyBlocksA) {
  const RuntimeGrid g = grid_from({"GRF", "GRG", "GRG"});
  const std::vector<Position> goals = {{2, 0}};
  EXPECT_FALSE(shortest_path(g, {0, 0}, goals, kA));
  const auto p = shortest_path(g, {0, 0}, goals, kB);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->size(), 2u);
}

TEST(ShortestPath, StartOnGoalIsEmpty) {
  const RuntimeGrid g = grid_from({"FG", "GG"});
  const std::vector<Position> goals = {{0, 0}, {1, 1}};
  const auto p = shortest_path(g, {0, 0}, goals, kA);
  ASSERT_TRUE(p);
  EXPECT_TRUE(p->empty());
  EXPECT_FALSE(shortest_path(g, {0, 0}, std::vector<Position>{}, kA));
}

TEST(ShortestPath, TieBreaking) {
  // Two goals at distance 2; the row-major first one wins.
  const RuntimeGrid g = grid_from({"GGF", "GGG", "FGG"});
  const std::vector<Position> goals = {{0, 2}, {2, 0}};
  const auto p = shortest_path(g, {0, 0}, goals, kA);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->back(), (Position{2, 0}));

  // Equal-length routes to one goal: Down is expanded before Right.
  const RuntimeGrid open = grid_from({"GGG", "GGG", "GGG"});
  const std::vector<Position> diag = {{1, 1}};
  const auto q = shortest_path(open, {0, 0}, diag, kA);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, (Path{{0, 1}, {1, 1}}));
}

TEST(ShortestPath, MatchesBfsOracle) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const RuntimeGrid g = oracle::random_grid(6, 6, s);
    std::mt19937_64 rng(s ^ 0xabc);
    const Position from{static_cast<int>(rng() % 6), static_cast<int>(rng() % 6)};
    std::vector<Position> goals;
    for (std::size_t i = 0; i < g.area(); ++i) {
      if (g.tiles()[i] == RuntimeTile::Food) goals.push_back(g.position_of(i));
    }
    for (const ArchetypeSpec& arch : {kA, kB}) {
      const auto p = shortest_path(g, from, goals, arch);
      // The oracle treats the start as walkable; the library does not require it.
      std::vector<Position> reachable_goals;
      for (Position gp : goals) {
        if (gp == from || oracle::walkable(g.at(gp), arch)) reachable_goals.push_back(gp);
      }
      const auto d = oracle::bfs_distance(g, from, reachable_goals, arch);
      ASSERT_EQ(p.has_value(), d.has_value()) << "seed " << s;
      if (!p) continue;
      ASSERT_EQ(static_cast<int>(p->size()), *d) << "seed " << s;
      ASSERT_TRUE(oracle::valid_path(g, from, *p, arch)) << "seed " << s;
    }
  }
}

TEST(Reachability, RockArchetypeSeesSuperset) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const RuntimeGrid g = oracle::random_grid(6, 6, s + 1000);
    const Position from{static_cast<int>(s % 6), static_cast<int>((s / 6) % 6)};
    std::set<Position> via_a, via_b;
    for (std::size_t i = 0; i < g.area(); ++i) {
      const Position t = g.position_of(i);
      const std::vector<Position> goal = {t};
      if (shortest_path(g, from, goal, kA)) via_a.insert(t);
      if (shortest_path(g, from, goal, kB)) via_b.insert(t);
    }
    for (Position p : via_a) ASSERT_TRUE(via_b.count(p)) << "seed " << s;
  }
}

TEST(Policy, StepsTowardAdjacentFood) {
  const Level l = level_from({"1FGG", "GGGG", "GGG2"});
  MatchState st(l, kA, kA, quiet());
  EXPECT_EQ(agent_policy(st, 0), Action::Right);
}

TEST(Policy, FallsBackToWater) {
  // No Food; the nearest passable cell next to Water is straight below.
  const Level l = level_from({"1GGG", "GGGG", "GGGG", "WGG2"});
  MatchState st(l, kA, kA, quiet());
  EXPECT_EQ(agent_policy(st, 0), Action::Down);
  // Already next to water: stay.
  const Level m = level_from({"1GGG", "WGGG", "GGG2"});
  MatchState st2(m, kA, kA, quiet());
  EXPECT_EQ(agent_policy(st2, 0), Action::DoNothing);
}

TEST(Policy, NothingReachableMeansStay) {
  const Level l = level_from({"1RGG", "RGFW", "GGG2"});
  MatchState st(l, kA, kA, quiet());
  EXPECT_EQ(agent_policy(st, 0), Action::DoNothing);
  MatchState st_b(l, kB, kA, quiet());
  EXPECT_NE(agent_policy(st_b, 0), Action::DoNothing);
}

TEST(Policy, HandicapSkipsOddTurns) {
  const Level l = level_from({"1FGG", "GGGG", "GGG2"});
  MatchState st(l, kC, kA, quiet());
  EXPECT_EQ(agent_policy(st, 0), Action::Right);
  st.turn_index = 1;
  EXPECT_EQ(agent_policy(st, 0), Action::DoNothing);
  st.turn_index = 2;
  EXPECT_EQ(agent_policy(st, 0), Action::Right);
}

TEST(StepMatch, StarvationDeathAtTurnTwenty) {
  // Player 1 is walled in by Rock with no food or water; player 2 sits by Water.
  const Level l = level_from({"1RGGGG", "RGGGGG", "GGGGGG", "GGGGGG", "GGGGGW", "GGGGG2"});
  MatchState st(l, kA, kA, quiet());
  for (int t = 1; t <= 20; ++t) {
    step_match(st);
    const PlayerState& p = st.players[0];
    const int gauge = std::max(10 - t, 0);
    ASSERT_EQ(p.food, gauge) << "turn " << t;
    ASSERT_EQ(p.water, gauge) << "turn " << t;
    ASSERT_EQ(p.health, t <= 10 ? 10 : 20 - t) << "turn " << t;
    ASSERT_EQ(st.players[1].water, 9);
    ASSERT_EQ(st.players[1].health, 10);
    if (t < 20) ASSERT_FALSE(st.finished()) << "turn " << t;
  }
  ASSERT_TRUE(st.finished());
  EXPECT_EQ(st.outcome->winner, Winner::Player2);
  EXPECT_EQ(st.outcome->cause, EndCause::Survived);
  EXPECT_EQ(st.outcome->turns_played, 20);
  EXPECT_THROW(step_match(st), UsageError);
}

TEST(StepMatch, SimultaneousEntryAwardsOnePoint) {
  const Level l = level_from({"1F2", "GGG"});
  int first = 0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    MatchState st(l, kA, kA, quiet(s));
    const TurnReport r = step_match(st);
    ASSERT_EQ(r.applied[0], Action::Right);
    ASSERT_EQ(r.applied[1], Action::Left);
    ASSERT_EQ(st.players[0].victory_points + st.players[1].victory_points, 1);
    ASSERT_EQ(st.grid.at({1, 0}), RuntimeTile::Scrub);
    ASSERT_EQ(st.players[0].pos, st.players[1].pos);
    first += st.players[0].victory_points;
  }
  EXPECT_GT(first, 150);
  EXPECT_LT(first, 250);
}

TEST(StepMatch, ScrubConstantWithoutRespawn) {
  const Level l = level_from({"1GG", "GGW", "GG2"});
  MatchState st(l, kA, kA, quiet());
  st.grid = grid_from({"GSS", "SSW", "SSG"});
  for (int t = 0; t < 100 && !st.finished(); ++t) {
    step_match(st);
    ASSERT_EQ(st.grid.count(RuntimeTile::Scrub), 6u);
  }
}

TEST(StepMatch, CertainRespawnRefillsEveryScrub) {
  const Level l = level_from({"1GG", "GGW", "GG2"});
  MatchConfig cfg = quiet();
  cfg.respawn_prob = 1.0;
  MatchState st(l, kA, kA, cfg);
  st.grid = grid_from({"GSS", "SSW", "SSG"});
  const TurnReport r = step_match(st);
  // The respawned food appears after movement, so nobody ate this turn.
  EXPECT_EQ(r.respawned.size(), 6u);
  EXPECT_EQ(st.grid.count(RuntimeTile::Scrub), 0u);
  EXPECT_EQ(st.grid.count(RuntimeTile::Food), 6u);
}

TEST(StepMatch, StandingOnRespawnedFood) {
  const Level l = level_from({"1GW", "GGG", "GG2"});
  for (bool stand : {false, true}) {
    MatchConfig cfg = quiet();
    cfg.consume_on_stand = stand;
    MatchState st(l, kA, kA, cfg);
    st.grid.set({0, 0}, RuntimeTile::Food);  // food respawned under player 1
    // Block everything else so player 1 has no other target and stays.
    st.grid.set({1, 0}, RuntimeTile::Rock);
    st.grid.set({0, 1}, RuntimeTile::Rock);
    step_match(st);
    EXPECT_EQ(st.players[0].pos, (Position{0, 0}));
    EXPECT_EQ(st.players[0].victory_points, stand ? 1 : 0) << "consume_on_stand=" << stand;
  }
}

TEST(StepMatch, RegenerationAboveThreshold) {
  const Level l = level_from({"1GW", "GGG", "GG2"});
  MatchState st(l, kA, kA, quiet());
  st.players[0].health = 5;
  st.players[0].pos = {1, 0};
  st.players[0].food = 10;
  st.players[0].water = 10;
  st.grid = grid_from({"GGW", "GGG", "GGG"});
  step_match(st);
  EXPECT_EQ(st.players[0].health, 6);  // food 9 > 5, water refilled then 9 > 5
}

TEST(Adjudicate, Examples) {
  const Level l = level_from({"1G", "G2"});
  {
    MatchState st(l, kA, kA, quiet());
    st.players[0].victory_points = 5;
    st.players[1].victory_points = 3;
    const auto o = adjudicate(st);
    ASSERT_TRUE(o);
    EXPECT_EQ(o->winner, Winner::Player1);
    EXPECT_EQ(o->cause, EndCause::FoodGoal);
    EXPECT_EQ(o->vp[0], kA.food_to_win);
  }
  {
    MatchState st(l, archetypes::food3(), kA, quiet());
    st.players[0].victory_points = 3;
    st.players[1].victory_points = 4;
    const auto o = adjudicate(st);
    ASSERT_TRUE(o);
    EXPECT_EQ(o->winner, Winner::Player1);
    EXPECT_EQ(o->cause, EndCause::FoodGoal);
  }
  {
    MatchState st(l, kA, kA, quiet());
    st.players[0].health = 0;
    st.players[1].health = 0;
    const auto o = adjudicate(st);
    ASSERT_TRUE(o);
    EXPECT_EQ(o->winner, Winner::Draw);
    EXPECT_EQ(o->cause, EndCause::MutualDeath);
  }
  {
    MatchState st(l, kA, kA, quiet());
    st.players[0].victory_points = 5;
    st.players[1].victory_points = 5;
    const auto o = adjudicate(st);
    ASSERT_TRUE(o);
    EXPECT_EQ(o->winner, Winner::Draw);
    EXPECT_EQ(o->cause, EndCause::MutualGoal);
  }
  {
    // Food goal beats death in the same turn.
    MatchState st(l, kA, kA, quiet());
    st.players[0].victory_points = 5;
    st.players[0].health = 0;
    const auto o = adjudicate(st);
    ASSERT_TRUE(o);
    EXPECT_EQ(o->winner, Winner::Player1);
  }
  {
    MatchState st(l, kA, kA, quiet());
    st.players[1].health = 0;
    EXPECT_EQ(adjudicate(st)->cause, EndCause::Survived);
    st.players[1].health = 1;
    st.turn_index = 99;
    EXPECT_FALSE(adjudicate(st));
    st.turn_index = 100;
    EXPECT_EQ(adjudicate(st)->cause, EndCause::Timeout);
  }
}

TEST(RunMatch, OneSidedFoodAccess) {
  const Level l = level_from({"1FGWGG", "FGFWGG", "GFGWGG", "GGFWGG", "GGGWGG", "GGGWG2"});
  const MatchOutcome o = run_match(l, kA, kA, quiet());
  EXPECT_EQ(o.winner, Winner::Player1);
  EXPECT_EQ(o.cause, EndCause::FoodGoal);
  EXPECT_EQ(o.vp[0], 5);
  EXPECT_EQ(o.vp[1], 0);
}

TEST(RunMatch, NoFoodNoWaterIsDraw) {
  const Level l = Level::filled(6, 6, TileKind::Grass, {0, 0}, {5, 5});
  const MatchOutcome o = run_match(l, kA, kA, MatchConfig{});
  EXPECT_EQ(o.winner, Winner::Draw);
  EXPECT_EQ(o.cause, EndCause::MutualDeath);
  EXPECT_EQ(o.turns_played, 20);
}

TEST(RunMatch, TimeoutWhenNobodyStarves) {
  const Level l = level_from({"1WG", "GGG", "GW2"});
  MatchConfig cfg;
  cfg.max_turns = 30;
  const MatchOutcome o = run_match(l, kA, kA, cfg);
  EXPECT_EQ(o.cause, EndCause::Timeout);
  EXPECT_EQ(o.turns_played, 30);
}

TEST(RunMatch, DeterministicTrace) {
  GeneratorConfig gen;
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Level l = generate_level(gen, rng);
    MatchConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(i);
    std::ostringstream t1, t2;
    const MatchOutcome a = run_match_traced(l, kA, kC, cfg, t1);
    const MatchOutcome b = run_match_traced(l, kA, kC, cfg, t2);
    EXPECT_EQ(a, b);
    EXPECT_EQ(t1.str(), t2.str());
    EXPECT_EQ(run_match(l, kA, kC, cfg), a);

    std::istringstream in(t1.str());
    int lines = 0;
    for (std::string line; std::getline(in, line); ++lines) {
      EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 6) << line;
    }
    EXPECT_EQ(lines, a.turns_played);
  }
}

TEST(RunMatch, InvariantsUnderFuzz) {
  GeneratorConfig gen;
  Rng rng(11);
  const std::vector<ArchetypeSpec> all = {kA, kB, kC, archetypes::food4(), archetypes::food3()};
  int turns = 0;
  for (int m = 0; turns < 3000; ++m) {
    const Level l = generate_level(gen, rng);
    MatchConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(m);
    cfg.respawn_prob = m % 3 == 0 ? 0.2 : 0.025;
    const ArchetypeSpec& a1 = all[static_cast<std::size_t>(m) % all.size()];
    const ArchetypeSpec& a2 = all[static_cast<std::size_t>(m / 5) % all.size()];
    MatchState st(l, a1, a2, cfg);
    const std::size_t food_scrub = st.grid.count(RuntimeTile::Food) + st.grid.count(RuntimeTile::Scrub);
    const std::size_t rock = st.grid.count(RuntimeTile::Rock);
    const std::size_t water = st.grid.count(RuntimeTile::Water);
    std::array<int, 2> acted{};
    while (!st.finished()) {
      const std::array<int, 2> vp0 = {st.players[0].victory_points, st.players[1].victory_points};
      const TurnReport r = step_match(st);
      ++turns;
      int eaten = 0;
      for (std::size_t i = 0; i < 2; ++i) {
        const PlayerState& p = st.players[i];
        ASSERT_GE(p.health, 0);
        ASSERT_LE(p.health, cfg.max_health);
        ASSERT_GE(p.food, 0);
        ASSERT_LE(p.food, cfg.max_food);
        ASSERT_GE(p.water, 0);
        ASSERT_LE(p.water, cfg.max_water);
        ASSERT_GE(p.victory_points, vp0[i]);
        eaten += r.consumed[i].has_value();
        acted[i] += r.chosen[i] != Action::DoNothing;
      }
      ASSERT_EQ(st.players[0].victory_points + st.players[1].victory_points - vp0[0] - vp0[1], eaten);
      ASSERT_EQ(st.grid.count(RuntimeTile::Food) + st.grid.count(RuntimeTile::Scrub), food_scrub);
      ASSERT_EQ(st.grid.count(RuntimeTile::Rock), rock);
      ASSERT_EQ(st.grid.count(RuntimeTile::Water), water);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      if (st.archetypes[i].action_period == 2) {
        ASSERT_LE(acted[i], (st.turn_index + 1) / 2);
      }
    }
    if (st.outcome->winner != Winner::Draw && st.outcome->cause == EndCause::FoodGoal) {
      const auto k = st.outcome->winner == Winner::Player1 ? 0u : 1u;
      ASSERT_EQ(st.outcome->vp[k], st.archetypes[k].food_to_win);
    }
  }
}

// Playing the same archetypes from the same cells with the player labels
// exchanged mirrors b.
TEST(RunMatch, RoleSwapSymmetry) {
  GeneratorConfig gen;
  Rng rng(77);
  EvalConfig cfg;
  cfg.n_sims = 1000;
  for (int i = 0; i < 6; ++i) {
    const Level l = generate_level(gen, rng);
    const Level swapped = l.with_spawns(l.spawn2(), l.spawn1());
    cfg.base_seed = 100 + static_cast<std::uint64_t>(i);
    const double b = estimate_balance(l, kA, kC, cfg).b();
    cfg.base_seed = 900 + static_cast<std::uint64_t>(i);
    const double bs = estimate_balance(swapped, kC, kA, cfg).b();
    EXPECT_NEAR(bs, 1.0 - b, 0.05) << "level " << i;
  }
}

TEST(MatchConfig, Validation) {
  MatchConfig cfg;
  cfg.respawn_prob = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = MatchConfig{};
  cfg.max_turns = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = MatchConfig{};
  cfg.regen_threshold_frac = -0.1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}
