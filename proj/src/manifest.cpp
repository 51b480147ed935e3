#include "lvlbal/manifest.hpp"

#include <fstream>

#include "lvlbal/errors.hpp"

namespace lvlbal {

using nlohmann::json;

json manifest_to_json(const RunManifest& m) {
  const MatchConfig& mc = m.eval.match;
  return json{
      {"command", m.command},
      {"dataset", m.dataset},
      {"pair", m.pair},
      {"method", m.method},
      {"eval",
       {{"n_sims", m.eval.n_sims},
        {"base_seed", m.eval.base_seed},
        {"epsilon", m.eval.epsilon},
        {"match",
         {{"max_turns", mc.max_turns},
          {"max_health", mc.max_health},
          {"max_food", mc.max_food},
          {"max_water", mc.max_water},
          {"respawn_prob", mc.respawn_prob},
          {"regen_threshold_frac", mc.regen_threshold_frac},
          {"consume_on_stand", mc.consume_on_stand}}}}},
      {"budget",
       {{"max_evals", m.budget.max_evals},
        {"stop_on_balanced", m.budget.stop_on_balanced},
        {"common_random_numbers", m.budget.common_random_numbers}}},
      {"max_steps", m.max_steps},
      {"variant", m.variant},
      {"peer", m.peer},
      {"seed", m.seed},
      {"threads", m.threads},
      {"out", m.out},
      {"levels_out", m.levels_out}};
}

RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.dataset = j.at("dataset").get<std::string>();
    m.pair = j.at("pair").get<std::string>();
    m.method = j.value("method", "");
    const json& e = j.at("eval");
    m.eval.n_sims = e.at("n_sims").get<int>();
    m.eval.base_seed = e.at("base_seed").get<std::uint64_t>();
    m.eval.epsilon = e.at("epsilon").get<double>();
    const json& mc = e.at("match");
    m.eval.match.max_turns = mc.at("max_turns").get<int>();
    m.eval.match.max_health = mc.at("max_health").get<int>();
    m.eval.match.max_food = mc.at("max_food").get<int>();
    m.eval.match.max_water = mc.at("max_water").get<int>();
    m.eval.match.respawn_prob = mc.at("respawn_prob").get<double>();
    m.eval.match.regen_threshold_frac = mc.at("regen_threshold_frac").get<double>();
    m.eval.match.consume_on_stand = mc.at("consume_on_stand").get<bool>();
    const json& b = j.at("budget");
    m.budget.max_evals = b.at("max_evals").get<int>();
    m.budget.stop_on_balanced = b.at("stop_on_balanced").get<bool>();
    m.budget.common_random_numbers = b.at("common_random_numbers").get<bool>();
    m.max_steps = j.value("max_steps", 10);
    m.variant = j.value("variant", "wide");
    m.peer = j.value("peer", "");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.threads = j.value("threads", 0u);
    m.out = j.at("out").get<std::string>();
    m.levels_out = j.value("levels_out", "");
    return m;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad manifest: ") + ex.what());
  }
}

void save_manifest(const RunManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
  out << manifest_to_json(m).dump(2) << '\n';
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest '" + path.string() + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError("manifest '" + path.string() + "' is not valid JSON");
  return manifest_from_json(j);
}

}  // namespace lvlbal
