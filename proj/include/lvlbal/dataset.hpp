#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "lvlbal/level.hpp"

namespace lvlbal {

struct LevelRecord {
  std::string id;
  Level level;
  std::map<std::string, std::string> meta;

  friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

// Ordered records with unique ids.
class LevelDataset {
 public:
  LevelDataset() = default;

  // Throws ConfigError on a duplicate id.
  void add(LevelRecord record);
  void add(std::string id, Level level) { add(LevelRecord{std::move(id), std::move(level), {}}); }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const LevelRecord& operator[](std::size_t i) const { return records_[i]; }
  LevelRecord& operator[](std::size_t i) { return records_[i]; }

  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  friend bool operator==(const LevelDataset& a, const LevelDataset& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<LevelRecord> records_;
  std::unordered_set<std::string> ids_;
};

// One record per LF-terminated line:
//   id \t w \t h \t tilestring \t x1,y1 \t x2,y2 \t json-meta
std::string format_record(const LevelRecord& record);
LevelRecord parse_record(const std::string& line, std::size_t line_no = 0);

void write_dataset(const LevelDataset& ds, std::ostream& out);
// Errors carry the 1-based line number of the offending record.
LevelDataset read_dataset(std::istream& in);

void save_dataset(const LevelDataset& ds, const std::filesystem::path& path);
LevelDataset load_dataset(const std::filesystem::path& path);

// `count` levels drawn from one stream seeded with config.seed; ids are
// prefix + zero-padded index.
LevelDataset generate_dataset(const GeneratorConfig& config, std::size_t count,
                              const std::string& id_prefix = "lvl-");

}  // namespace lvlbal
