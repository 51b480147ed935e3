#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lvlbal/dataset.hpp"
#include "lvlbal/gateway.hpp"
#include "lvlbal/manifest.hpp"
#include "lvlbal/report.hpp"

namespace lvlbal {

// "A:C" -> (A, C). Throws ConfigError.
std::pair<ArchetypeSpec, ArchetypeSpec> parse_pair(const std::string& pair);

// Initial imbalance of every level for the manifest's pairing.
ImbalanceSummary run_measure(const RunManifest& manifest, const LevelDataset& ds);

struct BalanceRun {
  std::vector<BatchRow> rows;
  BatchSummary summary;
  LevelDataset final_levels;  // meta carries initial_b, final_b, draws
};

// Runs the manifest's method on every level. Level i searches with
// rng seed derive_seed(manifest.seed, i) and evaluation seed family
// level_seed(eval.base_seed, i). `policy` is required for method "external".
BalanceRun run_balance(const RunManifest& manifest, const LevelDataset& ds,
                       PolicyClient* policy = nullptr);

}  // namespace lvlbal
