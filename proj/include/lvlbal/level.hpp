#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvlbal/random.hpp"

namespace lvlbal {

// Design-time terrain. Scrub exists only at match runtime (see game.hpp).
enum class TileKind : std::uint8_t { Grass, Rock, Water, Food };

inline constexpr std::array<TileKind, 4> kTileKinds = {TileKind::Grass, TileKind::Rock,
                                                       TileKind::Water, TileKind::Food};

char tile_glyph(TileKind kind);
std::optional<TileKind> tile_from_glyph(char glyph);
std::string_view tile_name(TileKind kind);

// x is the column, y the row; origin is the top-left cell.
struct Position {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

// Column letter followed by the 1-based row number, e.g. (3,2) -> "D3".
// Columns are limited to A..Z.
std::string coord_label(Position pos);
// Throws ParseError on malformed labels and on labels outside width x height.
Position parse_label(std::string_view label, int width = 26, int height = 1 << 20);

// A rectangular design grid plus the two spawn positions. Spawns always sit on
// Grass and are stored apart from the terrain, so the grid stays 4-valued.
class Level {
 public:
  Level(int width, int height, std::vector<TileKind> tiles, Position spawn1, Position spawn2);

  // Uniform terrain of `kind` with the given spawns; spawns are forced to Grass.
  static Level filled(int width, int height, TileKind kind, Position spawn1, Position spawn2);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t area() const { return tiles_.size(); }

  bool in_bounds(Position p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }
  std::size_t index(Position p) const { return static_cast<std::size_t>(p.y * width_ + p.x); }
  Position position_of(std::size_t index) const {
    return {static_cast<int>(index) % width_, static_cast<int>(index) / width_};
  }

  TileKind at(Position p) const { return tiles_[index(p)]; }
  std::span<const TileKind> tiles() const { return tiles_; }

  Position spawn1() const { return spawn1_; }
  Position spawn2() const { return spawn2_; }
  // player is 0 or 1
  Position spawn(int player) const { return player == 0 ? spawn1_ : spawn2_; }

  std::size_t count(TileKind kind) const;

  // Copy with one terrain cell replaced. Throws if that would put a spawn off Grass.
  Level with_tile(Position p, TileKind kind) const;
  Level with_spawns(Position spawn1, Position spawn2) const;

  friend bool operator==(const Level&, const Level&) = default;

 private:
  int width_;
  int height_;
  std::vector<TileKind> tiles_;
  Position spawn1_;
  Position spawn2_;
};

// Row-major glyph string over {G,R,W,F}.
std::string tile_string(const Level& level);

struct GeneratorConfig {
  int width = 6;
  int height = 6;
  // Probability per TileKind, indexed by the enum value.
  std::array<double, 4> tile_weights = {0.50, 0.20, 0.15, 0.15};
  int min_food_tiles = 2;
  std::uint64_t seed = 42;

  void validate() const;
};

// Draws every tile independently from the configured weights, resampling the
// whole grid until it holds at least two Grass tiles and min_food_tiles Food
// tiles, then places both spawns uniformly on distinct Grass tiles.
Level generate_level(const GeneratorConfig& config, Rng& rng);

// Grid of G/R/W/F glyphs with '1' and '2' overlaid at the spawns, framed by
// column letters and row numbers that match coord_label.
std::string render_ascii(const Level& level);
Level parse_ascii(std::string_view text);

}  // namespace lvlbal
