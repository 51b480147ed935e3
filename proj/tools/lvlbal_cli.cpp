// lvlbal: dataset generation, imbalance measurement, baseline balancing,
// environment serving and before/after rendering.
//
// Exit codes: 0 ok, 1 usage, 2 I/O, 3 protocol.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lvlbal/balance.hpp"
#include "lvlbal/dataset.hpp"
#include "lvlbal/errors.hpp"
#include "lvlbal/gateway.hpp"
#include "lvlbal/manifest.hpp"
#include "lvlbal/net.hpp"
#include "lvlbal/report.hpp"
#include "lvlbal/runs.hpp"

namespace {

using namespace lvlbal;

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kProtocol = 3 };

GeneratorConfig load_generator_config(const std::string& path) {
  GeneratorConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read generator config '" + path + "'");
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("generator config must be a JSON object");
  cfg.width = j.value("width", cfg.width);
  cfg.height = j.value("height", cfg.height);
  cfg.min_food_tiles = j.value("min_food_tiles", cfg.min_food_tiles);
  if (j.contains("tile_weights")) {
    const auto& w = j["tile_weights"];
    for (TileKind k : kTileKinds) {
      cfg.tile_weights[static_cast<std::size_t>(k)] = w.value(std::string(tile_name(k)), 0.0);
    }
  }
  cfg.validate();
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

int do_measure(const RunManifest& m, const std::string& setups_out) {
  const LevelDataset ds = load_dataset(m.dataset);
  const ImbalanceSummary s = run_measure(m, ds);

  std::ostringstream csv;
  write_imbalance_csv(csv, ds, s);
  write_text(m.out, csv.str());
  if (!m.out.empty() && m.out != "-") save_manifest(m, manifest_path(m.out));

  std::ostringstream row;
  row << m.pair << ',' << s.initial_imbalance() << '\n';
  if (!setups_out.empty()) {
    const bool fresh = !std::filesystem::exists(setups_out);
    std::ofstream out(setups_out, std::ios::app);
    if (!out) throw IoError("cannot write '" + setups_out + "'");
    if (fresh) out << "setup,initial_imbalance_fraction\n";
    out << row.str();
  }
  std::cerr << "levels=" << ds.size() << " favor_p1=" << s.frac_favor1
            << " favor_p2=" << s.frac_favor2 << " balanced=" << s.frac_balanced
            << " p1_share_of_unbalanced=" << s.favor1_share()
            << " initial_imbalance=" << s.initial_imbalance() << '\n';
  return kOk;
}

int do_balance(const RunManifest& m) {
  const LevelDataset ds = load_dataset(m.dataset);
  std::optional<PolicyClient> policy;
  if (m.method == "external") {
    if (m.peer.empty()) throw ConfigError("method external needs --peer host:port");
    const auto [host, port] = net::parse_endpoint(m.peer);
    policy.emplace(host, port);
  }
  const BalanceRun run = run_balance(m, ds, policy ? &*policy : nullptr);

  std::ostringstream csv;
  write_batch_csv(csv, run.rows);
  write_text(m.out, csv.str());
  if (!m.out.empty() && m.out != "-") save_manifest(m, manifest_path(m.out));
  if (!m.levels_out.empty()) save_dataset(run.final_levels, m.levels_out);

  const BatchSummary& s = run.summary;
  std::cerr << "method=" << m.method << " pair=" << m.pair << " levels=" << s.levels
            << " initially_balanced=" << s.initially_balanced << " considered=" << s.considered
            << " balanced=" << s.balanced << " balanced_fraction=" << s.balanced_fraction << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balance two-player tile levels for asymmetric heuristic archetypes"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a level dataset");
  std::string gen_config, gen_out;
  std::size_t gen_count = 500;
  std::uint64_t gen_seed = 42;
  gen->add_option("--config", gen_config, "Generator config JSON (width, height, tile_weights, min_food_tiles)");
  gen->add_option("--count", gen_count, "Number of levels")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Dataset file")->required();

  // shared evaluation options
  RunManifest manifest;
  const auto add_eval_options = [&](CLI::App* cmd) {
    cmd->add_option("--dataset", manifest.dataset, "Dataset file")->required();
    cmd->add_option("--pair", manifest.pair, "Archetype pairing, e.g. A:C")->default_val("A:A");
    cmd->add_option("--sims", manifest.eval.n_sims, "Simulations per estimate")->default_val(10);
    cmd->add_option("--eval-seed", manifest.eval.base_seed, "Evaluation seed family")->default_val(0);
    cmd->add_option("--epsilon", manifest.eval.epsilon, "Balance tolerance")->default_val(0.0);
    cmd->add_option("--max-turns", manifest.eval.match.max_turns, "Turn limit per match")->default_val(100);
    cmd->add_option("--threads", manifest.threads, "Worker threads (0 = all cores)")->default_val(0);
    cmd->add_option("--out", manifest.out, "CSV output ('-' for stdout)")->default_val("-");
  };

  auto* measure = app.add_subcommand("measure", "Measure initial imbalance of a dataset");
  add_eval_options(measure);
  std::string setups_out;
  std::uint64_t measure_seed = 0;
  measure->add_option("--seed", measure_seed, "Alias of --eval-seed");
  measure->add_option("--setups-out", setups_out, "Append a (setup, initial_imbalance_fraction) row here");

  auto* balance = app.add_subcommand("balance", "Balance every level of a dataset");
  add_eval_options(balance);
  bool no_crn = false, no_stop = false;
  balance->add_option("--method", manifest.method, "random | hillclimb | external")->required();
  balance->add_option("--budget", manifest.budget.max_evals, "Balance evaluations per level")->default_val(100);
  balance->add_option("--seed", manifest.seed, "Search seed")->default_val(0);
  balance->add_flag("--no-crn", no_crn, "Fresh simulation seeds for every evaluation");
  balance->add_flag("--no-stop", no_stop, "Keep searching after reaching balance");
  balance->add_option("--levels-out", manifest.levels_out, "Write the balanced levels as a dataset");
  balance->add_option("--peer", manifest.peer, "External policy endpoint host:port");
  balance->add_option("--max-steps", manifest.max_steps, "Episode length for external policies")->default_val(10);
  balance->add_option("--variant", manifest.variant, "wide | legacy (external policies)")->default_val("wide");

  // serve
  auto* serve = app.add_subcommand("serve", "Expose the balancing environment over the line protocol");
  std::string serve_variant = "wide", transport = "stdio", serve_pair = "A:A", serve_dataset, crn = "per-episode";
  GatewayConfig gw;
  serve->add_option("--variant", serve_variant, "wide | legacy")->capture_default_str();
  serve->add_option("--transport", transport, "stdio | tcp:PORT")->capture_default_str();
  serve->add_option("--pair", serve_pair, "Archetype pairing")->capture_default_str();
  serve->add_option("--sims", gw.env.eval.n_sims, "Simulations per estimate")->capture_default_str();
  serve->add_option("--epsilon", gw.env.eval.epsilon, "Balance tolerance")->capture_default_str();
  serve->add_option("--max-steps", gw.env.max_steps, "Swaps per episode")->capture_default_str();
  serve->add_option("--crn", crn, "per-episode | per-step")->capture_default_str();
  serve->add_option("--terminal-bonus", gw.env.terminal_bonus, "Bonus on reaching balance")->capture_default_str();
  serve->add_flag("--freeze-spawns", gw.env.freeze_spawns, "Swaps touching a spawn become no-ops");
  serve->add_option("--dataset", serve_dataset, "Levels available to reset by dataset_index");
  serve->add_option("--max-slots", gw.max_slots, "Environment slots per session")->capture_default_str();

  // render
  auto* render = app.add_subcommand("render", "Render levels, optionally before/after panels");
  std::string render_in, render_after, render_out = "-", render_pair = "A:A", render_id;
  EvalConfig render_eval;
  render->add_option("--in", render_in, "Dataset of (initial) levels")->required();
  render->add_option("--after", render_after, "Dataset of balanced levels (from balance --levels-out)");
  render->add_option("--id", render_id, "Only this level id");
  render->add_option("--pair", render_pair, "Archetype pairing for captions")->capture_default_str();
  render->add_option("--sims", render_eval.n_sims, "Simulations per estimate")->capture_default_str();
  render->add_option("--eval-seed", render_eval.base_seed, "Evaluation seed family")->capture_default_str();
  render->add_option("--epsilon", render_eval.epsilon, "Balance tolerance")->capture_default_str();
  render->add_option("--out", render_out, "Output file ('-' for stdout)")->capture_default_str();

  auto* replay = app.add_subcommand("replay", "Re-run a measure or balance run from its manifest");
  std::string replay_path;
  replay->add_option("--manifest", replay_path, "Manifest written next to a run's output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      GeneratorConfig cfg = load_generator_config(gen_config);
      cfg.seed = gen_seed;
      save_dataset(generate_dataset(cfg, gen_count), gen_out);
      std::cerr << "wrote " << gen_count << " levels to " << gen_out << '\n';
      return kOk;
    }
    if (measure->parsed()) {
      manifest.command = "measure";
      if (measure->count("--seed")) manifest.eval.base_seed = measure_seed;
      return do_measure(manifest, setups_out);
    }
    if (balance->parsed()) {
      manifest.command = "balance";
      manifest.budget.common_random_numbers = !no_crn;
      manifest.budget.stop_on_balanced = !no_stop;
      return do_balance(manifest);
    }
    if (replay->parsed()) {
      const RunManifest m = load_manifest(replay_path);
      if (m.command == "measure") return do_measure(m, "");
      if (m.command == "balance") return do_balance(m);
      throw ConfigError("manifest has unknown command '" + m.command + "'");
    }
    if (serve->parsed()) {
      gw.env.variant = parse_variant(serve_variant);
      std::tie(gw.env.player1, gw.env.player2) = parse_pair(serve_pair);
      if (crn == "per-episode") {
        gw.env.crn_policy = CrnPolicy::PerEpisode;
      } else if (crn == "per-step") {
        gw.env.crn_policy = CrnPolicy::PerStep;
      } else {
        throw ConfigError("--crn must be per-episode or per-step");
      }
      if (!serve_dataset.empty()) gw.dataset = load_dataset(serve_dataset);
      if (transport == "stdio") {
        serve_stream(gw, std::cin, std::cout);
        return kOk;
      }
      if (transport.rfind("tcp:", 0) == 0) {
        const auto [host, port] = net::parse_endpoint(transport.substr(4));
        net::Listener listener(port, host != "127.0.0.1" && host != "localhost");
        std::cerr << "listening on port " << listener.port() << '\n';
        serve_tcp(gw, listener);
        return kOk;
      }
      throw ConfigError("--transport must be stdio or tcp:PORT");
    }
    if (render->parsed()) {
      const LevelDataset before = load_dataset(render_in);
      std::optional<LevelDataset> after;
      if (!render_after.empty()) after = load_dataset(render_after);
      const auto [p1, p2] = parse_pair(render_pair);
      const auto estimate = [&](const Level& level, std::size_t i) {
        EvalConfig cfg = render_eval;
        cfg.base_seed = level_seed(render_eval.base_seed, i);
        return estimate_balance(level, p1, p2, cfg);
      };
      std::string text;
      bool found = false;
      for (std::size_t i = 0; i < before.size(); ++i) {
        const LevelRecord& rec = before[i];
        if (!render_id.empty() && rec.id != render_id) continue;
        found = true;
        const BalanceEstimate b0 = estimate(rec.level, i);
        text += rec.id + '\n';
        if (after) {
          if (i >= after->size() || (*after)[i].id != rec.id) {
            throw ConfigError("--after dataset does not line up with --in at id " + rec.id);
          }
          const Level& fin = (*after)[i].level;
          text += render_panel(rec.level, caption(b0, render_eval.epsilon), fin,
                               caption(estimate(fin, i), render_eval.epsilon));
        } else {
          text += render_ascii(rec.level) + caption(b0, render_eval.epsilon) + '\n';
        }
        text += '\n';
      }
      if (!found) throw ConfigError("no level with id '" + render_id + "'");
      write_text(render_out, text);
      return kOk;
    }
  } catch (const ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kProtocol;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
