#include "lvlbal/runs.hpp"

#include "lvlbal/errors.hpp"

namespace lvlbal {

std::pair<ArchetypeSpec, ArchetypeSpec> parse_pair(const std::string& pair) {
  const auto colon = pair.find(':');
  if (colon == std::string::npos) throw ConfigError("pair must look like A:C, got '" + pair + "'");
  return {archetype_preset(pair.substr(0, colon)), archetype_preset(pair.substr(colon + 1))};
}

ImbalanceSummary run_measure(const RunManifest& manifest, const LevelDataset& ds) {
  const auto [p1, p2] = parse_pair(manifest.pair);
  return dataset_imbalance(ds, p1, p2, manifest.eval, manifest.threads);
}

BalanceRun run_balance(const RunManifest& m, const LevelDataset& ds, PolicyClient* policy) {
  const auto [p1, p2] = parse_pair(m.pair);
  if (m.method != "random" && m.method != "hillclimb" && m.method != "external") {
    throw ConfigError("unknown method '" + m.method + "' (expected random, hillclimb or external)");
  }
  if (m.method == "external" && policy == nullptr) {
    throw UsageError("method external needs a connected policy peer");
  }
  m.eval.validate();
  m.budget.validate();

  std::vector<std::optional<BalancerResult>> results(ds.size());
  const auto solve = [&](std::size_t i) {
    EvalConfig cfg = m.eval;
    cfg.base_seed = level_seed(m.eval.base_seed, i);
    Rng rng(derive_seed(m.seed, i));
    if (m.method == "random") {
      results[i] = random_balancer(ds[i].level, p1, p2, cfg, m.budget, rng);
    } else if (m.method == "hillclimb") {
      results[i] = hill_climb(ds[i].level, p1, p2, cfg, m.budget, rng);
    } else {
      EnvConfig env;
      env.variant = parse_variant(m.variant);
      env.max_steps = m.max_steps;
      env.eval = m.eval;
      env.player1 = p1;
      env.player2 = p2;
      results[i] = external_balance(ds[i].level, env, cfg.base_seed, *policy);
    }
  };
  if (m.method == "external") {
    for (std::size_t i = 0; i < ds.size(); ++i) solve(i);
  } else {
    parallel_for(ds.size(), m.threads, solve);
  }

  BalanceRun run;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const BalancerResult& r = *results[i];
    run.rows.push_back(BatchRow{ds[i].id, m.method, r.initial_b(), r.final_b(),
                                is_balanced(r.final, m.eval.epsilon), r.evals_used});
    LevelRecord rec{ds[i].id, r.final_level, ds[i].meta};
    rec.meta["initial_b"] = format_b(r.initial_b());
    rec.meta["final_b"] = format_b(r.final_b());
    rec.meta["final_draws"] = std::to_string(r.final.draws());
    rec.meta["n_sims"] = std::to_string(r.final.n_sims());
    run.final_levels.add(std::move(rec));
  }
  run.summary = summarize_batch(run.rows, m.eval.epsilon);
  return run;
}

}  // namespace lvlbal
