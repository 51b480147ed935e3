#include "lvlbal/level.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lvlbal/errors.hpp"

namespace lvlbal {

char tile_glyph(TileKind kind) {
  switch (kind) {
    case TileKind::Grass:
      return 'G';
    case TileKind::Rock:
      return 'R';
    case TileKind::Water:
      return 'W';
    case TileKind::Food:
      return 'F';
  }
  return '?';
}

std::optional<TileKind> tile_from_glyph(char glyph) {
  switch (glyph) {
    case 'G':
      return TileKind::Grass;
    case 'R':
      return TileKind::Rock;
    case 'W':
      return TileKind::Water;
    case 'F':
      return TileKind::Food;
    default:
      return std::nullopt;
  }
}

std::string_view tile_name(TileKind kind) {
  switch (kind) {
    case TileKind::Grass:
      return "Grass";
    case TileKind::Rock:
      return "Rock";
    case TileKind::Water:
      return "Water";
    case TileKind::Food:
      return "Food";
  }
  return "?";
}

std::string coord_label(Position pos) {
  if (pos.x < 0 || pos.x >= 26 || pos.y < 0) {
    throw std::out_of_range("no label for position (" + std::to_string(pos.x) + "," +
                            std::to_string(pos.y) + ")");
  }
  return static_cast<char>('A' + pos.x) + std::to_string(pos.y + 1);
}

Position parse_label(std::string_view label, int width, int height) {
  auto fail = [&](const char* why) {
    return ParseError("bad coordinate label '" + std::string(label) + "': " + why);
  };
  if (label.size() < 2) throw fail("too short");
  const char col = label[0];
  if (col < 'A' || col > 'Z') throw fail("column must be a letter A-Z");
  if (label[1] == '0') throw fail("row has a leading zero");
  long row = 0;
  for (char c : label.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail("row must be a number");
    row = row * 10 + (c - '0');
    if (row > height) throw fail("row out of range");
  }
  Position pos{col - 'A', static_cast<int>(row) - 1};
  if (pos.x >= width || pos.y < 0 || pos.y >= height) throw fail("out of range");
  return pos;
}

Level::Level(int width, int height, std::vector<TileKind> tiles, Position spawn1, Position spawn2)
    : width_(width), height_(height), tiles_(std::move(tiles)), spawn1_(spawn1), spawn2_(spawn2) {
  if (width < 2 || height < 2) throw ConfigError("level must be at least 2x2");
  if (tiles_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ConfigError("tile count " + std::to_string(tiles_.size()) + " does not match " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
  if (!in_bounds(spawn1_) || !in_bounds(spawn2_)) throw ConfigError("spawn out of bounds");
  if (spawn1_ == spawn2_) throw ConfigError("spawns must differ");
  if (at(spawn1_) != TileKind::Grass || at(spawn2_) != TileKind::Grass) {
    throw ConfigError("spawns must sit on Grass");
  }
}

Level Level::filled(int width, int height, TileKind kind, Position spawn1, Position spawn2) {
  std::vector<TileKind> tiles(static_cast<std::size_t>(std::max(width, 0) * std::max(height, 0)),
                              kind);
  auto put_grass = [&](Position p) {
    if (p.x >= 0 && p.y >= 0 && p.x < width && p.y < height) {
      tiles[static_cast<std::size_t>(p.y * width + p.x)] = TileKind::Grass;
    }
  };
  put_grass(spawn1);
  put_grass(spawn2);
  return Level(width, height, std::move(tiles), spawn1, spawn2);
}

std::size_t Level::count(TileKind kind) const {
  return static_cast<std::size_t>(std::count(tiles_.begin(), tiles_.end(), kind));
}

Level Level::with_tile(Position p, TileKind kind) const {
  if (!in_bounds(p)) throw std::out_of_range("with_tile: position out of bounds");
  std::vector<TileKind> tiles = tiles_;
  tiles[index(p)] = kind;
  return Level(width_, height_, std::move(tiles), spawn1_, spawn2_);
}

Level Level::with_spawns(Position spawn1, Position spawn2) const {
  return Level(width_, height_, tiles_, spawn1, spawn2);
}

std::string tile_string(const Level& level) {
  std::string s;
  s.reserve(level.area());
  for (TileKind t : level.tiles()) s.push_back(tile_glyph(t));
  return s;
}

void GeneratorConfig::validate() const {
  if (width < 2 || height < 2) throw ConfigError("generator: level must be at least 2x2");
  double sum = 0.0;
  for (double w : tile_weights) {
    if (!(w >= 0.0)) throw ConfigError("generator: tile weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("generator: tile weights must sum to 1");
  if (min_food_tiles < 0) throw ConfigError("generator: min_food_tiles must be >= 0");
  const long area = static_cast<long>(width) * height;
  if (min_food_tiles + 2 > area) {
    throw ConfigError("generator: min_food_tiles plus two spawn tiles exceed the level area");
  }
  const auto weight = [&](TileKind k) { return tile_weights[static_cast<std::size_t>(k)]; };
  if (weight(TileKind::Grass) <= 0.0) throw ConfigError("generator: Grass weight must be positive");
  if (min_food_tiles > 0 && weight(TileKind::Food) <= 0.0) {
    throw ConfigError("generator: min_food_tiles > 0 needs a positive Food weight");
  }
}

Level generate_level(const GeneratorConfig& config, Rng& rng) {
  config.validate();
  const std::size_t area = static_cast<std::size_t>(config.width) * config.height;

  std::array<double, 4> cumulative{};
  std::partial_sum(config.tile_weights.begin(), config.tile_weights.end(), cumulative.begin());

  std::vector<TileKind> tiles(area);
  std::vector<std::size_t> grass;
  for (;;) {
    std::size_t food = 0;
    grass.clear();
    for (std::size_t i = 0; i < area; ++i) {
      const double u = uniform_unit(rng) * cumulative.back();
      std::size_t k = 0;
      while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
      tiles[i] = static_cast<TileKind>(k);
      if (tiles[i] == TileKind::Grass) grass.push_back(i);
      if (tiles[i] == TileKind::Food) ++food;
    }
    if (grass.size() >= 2 && food >= static_cast<std::size_t>(config.min_food_tiles)) break;
  }

  const std::size_t first = uniform_below(rng, grass.size());
  std::size_t second = uniform_below(rng, grass.size() - 1);
  if (second >= first) ++second;

  const auto pos = [&](std::size_t i) {
    return Position{static_cast<int>(i) % config.width, static_cast<int>(i) / config.width};
  };
  return Level(config.width, config.height, std::move(tiles), pos(grass[first]), pos(grass[second]));
}

std::string render_ascii(const Level& level) {
  std::ostringstream out;
  const int label_width = static_cast<int>(std::to_string(level.height()).size());
  out << std::string(static_cast<std::size_t>(label_width) + 1, ' ');
  for (int x = 0; x < level.width(); ++x) out << static_cast<char>('A' + x);
  out << '\n';
  for (int y = 0; y < level.height(); ++y) {
    std::string row = std::to_string(y + 1);
    out << std::string(static_cast<std::size_t>(label_width) - row.size(), ' ') << row << ' ';
    for (int x = 0; x < level.width(); ++x) {
      const Position p{x, y};
      if (p == level.spawn1()) {
        out << '1';
      } else if (p == level.spawn2()) {
        out << '2';
      } else {
        out << tile_glyph(level.at(p));
      }
    }
    out << '\n';
  }
  return out.str();
}

Level parse_ascii(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() < 3) throw ParseError("render needs a header and at least two rows");

  const std::string& header = lines[0];
  const auto first_col = header.find_first_not_of(' ');
  if (first_col == std::string::npos) throw ParseError("empty render header");
  const std::string letters = header.substr(first_col);
  const int width = static_cast<int>(letters.size());
  for (int x = 0; x < width; ++x) {
    if (letters[static_cast<std::size_t>(x)] != 'A' + x) throw ParseError("bad column header", 1);
  }
  const int height = static_cast<int>(lines.size()) - 1;

  std::vector<TileKind> tiles;
  tiles.reserve(static_cast<std::size_t>(width * height));
  std::optional<Position> s1, s2;
  for (int y = 0; y < height; ++y) {
    const std::string& line = lines[static_cast<std::size_t>(y) + 1];
    const std::size_t line_no = static_cast<std::size_t>(y) + 2;
    if (line.size() != first_col + static_cast<std::size_t>(width)) {
      throw ParseError("row has wrong length", line_no);
    }
    std::string label = line.substr(0, first_col);
    label.erase(0, label.find_first_not_of(' '));
    if (!label.empty() && label.back() == ' ') label.pop_back();
    if (label != std::to_string(y + 1)) throw ParseError("bad row label", line_no);
    for (int x = 0; x < width; ++x) {
      const char g = line[first_col + static_cast<std::size_t>(x)];
      if (g == '1' || g == '2') {
        auto& slot = g == '1' ? s1 : s2;
        if (slot) throw ParseError("duplicate spawn marker", line_no);
        slot = Position{x, y};
        tiles.push_back(TileKind::Grass);
      } else if (auto kind = tile_from_glyph(g)) {
        tiles.push_back(*kind);
      } else {
        throw ParseError(std::string("unknown glyph '") + g + "'", line_no);
      }
    }
  }
  if (!s1 || !s2) throw ParseError("render is missing a spawn marker");
  return Level(width, height, std::move(tiles), *s1, *s2);
}

}  // namespace lvlbal
