#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "lvlbal/dataset.hpp"
#include "lvlbal/errors.hpp"
#include "lvlbal/level.hpp"
#include "lvlbal/swap.hpp"

using namespace lvlbal;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Level, RejectsBrokenInvariants) {
  const std::vector<TileKind> grass(4, TileKind::Grass);
  EXPECT_THROW(Level(1, 4, grass, {0, 0}, {0, 1}), ConfigError);
  EXPECT_THROW(Level(2, 2, std::vector<TileKind>(3, TileKind::Grass), {0, 0}, {1, 0}), ConfigError);
  EXPECT_THROW(Level(2, 2, grass, {0, 0}, {0, 0}), ConfigError);
  EXPECT_THROW(Level(2, 2, grass, {0, 0}, {2, 0}), ConfigError);
  std::vector<TileKind> rocky = grass;
  rocky[1] = TileKind::Rock;
  EXPECT_THROW(Level(2, 2, rocky, {0, 0}, {1, 0}), ConfigError);
  EXPECT_NO_THROW(Level(2, 2, rocky, {0, 0}, {1, 1}));
}

TEST(Level, FilledForcesGrassUnderSpawns) {
  const Level l = Level::filled(3, 3, TileKind::Water, {0, 0}, {2, 2});
  EXPECT_EQ(l.at({0, 0}), TileKind::Grass);
  EXPECT_EQ(l.at({2, 2}), TileKind::Grass);
  EXPECT_EQ(l.count(TileKind::Water), 7u);
  EXPECT_THROW(l.with_tile({0, 0}, TileKind::Rock), ConfigError);
}

TEST(Coordinates, ColumnLetterRowNumber) {
  EXPECT_EQ(coord_label({3, 2}), "D3");
  EXPECT_EQ(coord_label({0, 0}), "A1");
  EXPECT_EQ(coord_label({2, 3}), "C4");
  EXPECT_EQ(parse_label("A1"), (Position{0, 0}));
  EXPECT_EQ(parse_label("D3"), (Position{3, 2}));
  EXPECT_EQ(coord_label({25, 11}), "Z12");
}

TEST(Coordinates, RoundTripOverFullGrid) {
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 6; ++x) {
      const Position p{x, y};
      EXPECT_EQ(parse_label(coord_label(p), 6, 6), p);
    }
  }
}

TEST(Coordinates, MalformedLabelsRejected) {
  for (const char* bad : {"", "A", "a1", "A0", "A01", "1A", "A-1", "G1", "A7", "AA1", "A1x"}) {
    EXPECT_THROW(parse_label(bad, 6, 6), ParseError) << bad;
  }
  EXPECT_THROW(coord_label({26, 0}), std::out_of_range);
  EXPECT_THROW(coord_label({0, -1}), std::out_of_range);
}

TEST(Generator, ValidatesConfig) {
  GeneratorConfig cfg;
  cfg.tile_weights = {0.5, 0.2, 0.15, 0.1};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.tile_weights = {0.5, 0.6, -0.1, 0.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = GeneratorConfig{};
  cfg.min_food_tiles = 35;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.min_food_tiles = -1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = GeneratorConfig{};
  cfg.tile_weights = {1.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(cfg.validate(), ConfigError);  // food demanded, none possible
  cfg.min_food_tiles = 0;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Generator, DegenerateAllGrass) {
  GeneratorConfig cfg;
  cfg.tile_weights = {1.0, 0.0, 0.0, 0.0};
  cfg.min_food_tiles = 0;
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Level l = generate_level(cfg, rng);
    EXPECT_EQ(l.count(TileKind::Grass), 36u);
    EXPECT_NE(l.spawn1(), l.spawn2());
  }
}

TEST(Generator, SameSeedSameLevel) {
  GeneratorConfig cfg;
  Rng a(42), b(42);
  const Level la = generate_level(cfg, a);
  const Level lb = generate_level(cfg, b);
  EXPECT_EQ(la, lb);
  EXPECT_EQ(format_record({"x", la, {}}), format_record({"x", lb, {}}));
}

TEST(Generator, Seed42MatchesGolden) {
  Rng rng(42);
  const Level l = generate_level(GeneratorConfig{}, rng);
  const std::string expected = slurp(LVLBAL_GOLDEN_DIR "/level_seed42.txt");
  ASSERT_FALSE(expected.empty());
  EXPECT_EQ(format_record({"seed-42", l, {}}) + "\n" + render_ascii(l), expected);
}

TEST(Generator, InvariantsHoldOverManySeeds) {
  GeneratorConfig cfg;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(s);
    const Level l = generate_level(cfg, rng);
    ASSERT_EQ(l.width(), 6);
    ASSERT_NE(l.spawn1(), l.spawn2());
    ASSERT_EQ(l.at(l.spawn1()), TileKind::Grass);
    ASSERT_EQ(l.at(l.spawn2()), TileKind::Grass);
    ASSERT_GE(l.count(TileKind::Food), 2u);
  }
}

// Resampling rejects grids with < 2 Food, so the kept distribution is the
// weights conditioned on that event. Compute the conditional expectation
// exactly from the binomial and compare the empirical fraction to it.
TEST(Generator, FoodFractionMatchesConfiguredDistribution) {
  GeneratorConfig cfg;
  const int n = 36;
  const double p = 0.15;
  double p0 = std::pow(1 - p, n);
  double p1 = n * p * std::pow(1 - p, n - 1);
  const double cond_mean = (n * p - p1) / (1 - p0 - p1) / n;

  Rng rng(2024);
  std::size_t food = 0;
  std::size_t tiles = 0;
  for (int i = 0; i < 10000; ++i) {
    const Level l = generate_level(cfg, rng);
    food += l.count(TileKind::Food);
    tiles += l.area();
  }
  const double frac = static_cast<double>(food) / static_cast<double>(tiles);
  EXPECT_NEAR(frac, 0.15, 0.01);
  EXPECT_NEAR(frac, cond_mean, 0.005);
}

TEST(Render, AllGrassCorners) {
  const Level l = Level::filled(6, 6, TileKind::Grass, {0, 0}, {5, 5});
  const std::string r = render_ascii(l);
  std::istringstream in(r);
  std::string header, row1, line, last;
  std::getline(in, header);
  std::getline(in, row1);
  while (std::getline(in, line)) last = line;
  EXPECT_EQ(header, "  ABCDEF");
  EXPECT_EQ(row1, "1 1GGGGG");
  EXPECT_EQ(last, "6 GGGGG2");
}

TEST(Render, ParseInvertsRender) {
  GeneratorConfig cfg;
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const Level l = generate_level(cfg, rng);
    EXPECT_EQ(parse_ascii(render_ascii(l)), l);
  }
  cfg.width = 12;
  cfg.height = 11;
  const Level wide = generate_level(cfg, rng);
  EXPECT_EQ(parse_ascii(render_ascii(wide)), wide);
}

TEST(Render, SwapChangesExactlyTwoCells) {
  // Sample-style level with distinct tiles at D3 and C4.
  Level l = Level::filled(6, 6, TileKind::Grass, {0, 0}, {5, 5});
  l = l.with_tile(parse_label("D3"), TileKind::Rock).with_tile(parse_label("C4"), TileKind::Food);
  const Level s = apply_swap(l, {parse_label("D3"), parse_label("C4"), std::nullopt});
  const std::string a = render_ascii(l);
  const std::string b = render_ascii(s);
  ASSERT_EQ(a.size(), b.size());
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  EXPECT_EQ(diff, 2);
  EXPECT_EQ(s.at(parse_label("D3")), TileKind::Food);
  EXPECT_EQ(s.at(parse_label("C4")), TileKind::Rock);
}

TEST(Render, ParseRejectsGarbage) {
  EXPECT_THROW(parse_ascii(""), ParseError);
  EXPECT_THROW(parse_ascii("  AB\n1 1G\n2 GX\n"), ParseError);
  EXPECT_THROW(parse_ascii("  AB\n1 1G\n2 GG\n"), ParseError);   // missing spawn 2
  EXPECT_THROW(parse_ascii("  AB\n1 11\n2 G2\n"), ParseError);   // duplicate spawn
  EXPECT_THROW(parse_ascii("  AC\n1 1G\n2 G2\n"), ParseError);   // bad header
  EXPECT_THROW(parse_ascii("  AB\n1 1G\n3 G2\n"), ParseError);   // bad row label
  EXPECT_NO_THROW(parse_ascii("  AB\n1 1G\n2 G2\n"));
}
