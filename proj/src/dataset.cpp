#include "lvlbal/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "lvlbal/errors.hpp"

namespace lvlbal {

void LevelDataset::add(LevelRecord record) {
  if (record.id.empty()) throw ConfigError("dataset: empty record id");
  if (!ids_.insert(record.id).second) throw ConfigError("dataset: duplicate id '" + record.id + "'");
  records_.push_back(std::move(record));
}

std::string format_record(const LevelRecord& record) {
  const Level& l = record.level;
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : record.meta) meta[k] = v;

  std::string line = record.id;
  line += '\t' + std::to_string(l.width());
  line += '\t' + std::to_string(l.height());
  line += '\t' + tile_string(l);
  line += '\t' + std::to_string(l.spawn1().x) + ',' + std::to_string(l.spawn1().y);
  line += '\t' + std::to_string(l.spawn2().x) + ',' + std::to_string(l.spawn2().y);
  line += '\t' + meta.dump();
  return line;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

int parse_int(const std::string& s, const char* what, std::size_t line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("field '") + what + "' is not an integer: '" + s + "'", line_no);
  }
  return value;
}

Position parse_xy(const std::string& s, const char* what, std::size_t line_no) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw ParseError(std::string("field '") + what + "' must be x,y", line_no);
  }
  return {parse_int(s.substr(0, comma), what, line_no), parse_int(s.substr(comma + 1), what, line_no)};
}

}  // namespace

LevelRecord parse_record(const std::string& line, std::size_t line_no) {
  const auto fields = split_tabs(line);
  if (fields.size() != 7) {
    throw ParseError("expected 7 tab-separated fields, got " + std::to_string(fields.size()), line_no);
  }
  LevelRecord rec{fields[0], Level::filled(2, 2, TileKind::Grass, {0, 0}, {1, 0}), {}};
  if (rec.id.empty()) throw ParseError("empty id", line_no);

  const int w = parse_int(fields[1], "w", line_no);
  const int h = parse_int(fields[2], "h", line_no);
  if (w < 2 || h < 2) throw ParseError("level must be at least 2x2", line_no);
  const std::string& tiles = fields[3];
  const std::size_t expected = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (tiles.size() != expected) {
    throw ParseError("tilestring has length " + std::to_string(tiles.size()) + ", expected " +
                         std::to_string(expected) + " (field 4)",
                     line_no);
  }
  std::vector<TileKind> grid;
  grid.reserve(expected);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    auto kind = tile_from_glyph(tiles[i]);
    if (!kind) {
      throw ParseError("bad tile glyph '" + std::string(1, tiles[i]) + "' at tilestring offset " +
                           std::to_string(i),
                       line_no);
    }
    grid.push_back(*kind);
  }
  const Position s1 = parse_xy(fields[4], "spawn1", line_no);
  const Position s2 = parse_xy(fields[5], "spawn2", line_no);
  try {
    rec.level = Level(w, h, std::move(grid), s1, s2);
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), line_no);
  }

  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(fields[6]);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("meta is not valid JSON", line_no);
  }
  if (!meta.is_object()) throw ParseError("meta must be a JSON object", line_no);
  for (const auto& [k, v] : meta.items()) {
    if (!v.is_string()) throw ParseError("meta value for '" + k + "' must be a string", line_no);
    rec.meta[k] = v.get<std::string>();
  }
  return rec;
}

void write_dataset(const LevelDataset& ds, std::ostream& out) {
  for (const auto& rec : ds) out << format_record(rec) << '\n';
}

LevelDataset read_dataset(std::istream& in) {
  LevelDataset ds;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty()) continue;
    LevelRecord rec = parse_record(line, line_no);
    try {
      ds.add(std::move(rec));
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return ds;
}

void save_dataset(const LevelDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset '" + path.string() + "'");
  write_dataset(ds, out);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

LevelDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read dataset '" + path.string() + "'");
  return read_dataset(in);
}

LevelDataset generate_dataset(const GeneratorConfig& config, std::size_t count,
                              const std::string& id_prefix) {
  config.validate();
  Rng rng(config.seed);
  LevelDataset ds;
  const int digits = count <= 1 ? 1 : static_cast<int>(std::to_string(count - 1).size());
  for (std::size_t i = 0; i < count; ++i) {
    std::string num = std::to_string(i);
    const auto width = static_cast<std::size_t>(std::max(digits, 5));
    if (num.size() < width) num.insert(0, width - num.size(), '0');
    ds.add(id_prefix + num, generate_level(config, rng));
  }
  return ds;
}

}  // namespace lvlbal
