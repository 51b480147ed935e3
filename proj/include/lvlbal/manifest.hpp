#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "lvlbal/balance.hpp"
#include "lvlbal/mdp.hpp"
#include "lvlbal/search.hpp"

namespace lvlbal {

// Everything needed to reproduce a measure or balance run.
struct RunManifest {
  std::string command;  // "measure" | "balance"
  std::string dataset;
  std::string pair;     // e.g. "A:C"
  std::string method;   // balance only: random | hillclimb | external
  EvalConfig eval;
  SearchBudget budget;
  int max_steps = 10;   // external episodes
  std::string variant = "wide";
  std::string peer;     // external policy endpoint
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::string levels_out;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

void save_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace lvlbal
