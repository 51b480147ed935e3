#include "lvlbal/gateway.hpp"

#include <climits>
#include <istream>
#include <ostream>
#include <thread>
#include <vector>

#include "lvlbal/errors.hpp"

namespace lvlbal {

using nlohmann::json;

namespace {

// Payload problem reported as E_ARG.
struct ArgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CmdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json error_response(const json& req_id, std::string_view code, const std::string& message) {
  return json{{"req_id", req_id},
              {"ok", false},
              {"error", json{{"code", std::string(code)}, {"message", message}}}};
}

std::uint64_t seed_from(const json& payload) {
  if (!payload.contains("seed")) return 0;
  const json& s = payload["seed"];
  if (!s.is_number_integer()) throw ArgError("seed must be a non-negative integer");
  if (s.is_number_unsigned()) return s.get<std::uint64_t>();
  const auto v = s.get<std::int64_t>();
  if (v < 0) throw ArgError("seed must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

// Invalid UTF-8 in echoed strings is replaced rather than thrown.
std::string to_line(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

}  // namespace

json observation_to_json(const Observation& obs) {
  json rows = json::array();
  for (int y = 0; y < obs.height; ++y) {
    json row = json::array();
    for (int x = 0; x < obs.width; ++x) row.push_back(obs.at(x, y));
    rows.push_back(std::move(row));
  }
  return rows;
}

json step_result_to_json(const StepResult& r) {
  return json{{"obs", observation_to_json(r.obs)},
              {"reward", r.reward},
              {"done", r.done},
              {"info",
               json{{"b", r.info.b},
                    {"wins1", r.info.wins1},
                    {"wins2", r.info.wins2},
                    {"draws", r.info.draws},
                    {"steps_used", r.info.steps_used},
                    {"balanced", r.info.balanced},
                    {"reward_halves", r.info.reward_halves}}}};
}

json level_to_json(const Level& level) {
  return json{{"w", level.width()},
              {"h", level.height()},
              {"tiles", tile_string(level)},
              {"spawn1", {level.spawn1().x, level.spawn1().y}},
              {"spawn2", {level.spawn2().x, level.spawn2().y}}};
}

Level level_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("level must be an object");
  try {
    const int w = j.at("w").get<int>();
    const int h = j.at("h").get<int>();
    const std::string tiles = j.at("tiles").get<std::string>();
    const auto s1 = j.at("spawn1").get<std::vector<int>>();
    const auto s2 = j.at("spawn2").get<std::vector<int>>();
    if (s1.size() != 2 || s2.size() != 2) throw ParseError("spawns must be [x, y]");
    if (w < 2 || h < 2 || tiles.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {
      throw ParseError("tiles length does not match w*h");
    }
    std::vector<TileKind> grid;
    for (char c : tiles) {
      auto kind = tile_from_glyph(c);
      if (!kind) throw ParseError(std::string("bad tile glyph '") + c + "'");
      grid.push_back(*kind);
    }
    return Level(w, h, std::move(grid), {s1[0], s1[1]}, {s2[0], s2[1]});
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad level: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("bad level: ") + e.what());
  }
}

GatewaySession::GatewaySession(GatewayConfig config) : config_(std::move(config)) {
  config_.env.validate();
  config_.generator.validate();
  if (config_.max_slots < 1) throw ConfigError("gateway: max_slots must be >= 1");
}

json GatewaySession::describe() const {
  const int h = config_.generator.height;
  const int w = config_.generator.width;
  const auto& env = config_.env;
  json order = {"y1", "x1", "y2", "x2"};
  if (env.variant == ActionSpaceVariant::SwapWideLegacy) order.push_back("apply");
  return json{{"protocol_version", kProtocolVersion},
              {"variant", std::string(variant_name(env.variant))},
              {"action_components", action_components(h, w, env.variant)},
              {"action_order", order},
              {"action_space_size", action_space_size(h, w, env.variant)},
              {"obs_shape", {h, w}},
              {"obs_ids", json{{"grass", 0}, {"rock", 1}, {"water", 2}, {"food", 3}, {"spawn1", 4}, {"spawn2", 5}}},
              {"max_steps", env.max_steps},
              {"n_sims", env.eval.n_sims},
              {"epsilon", env.eval.epsilon},
              {"crn_policy", env.crn_policy == CrnPolicy::PerEpisode ? "per_episode" : "per_step"},
              {"players", {env.player1.name, env.player2.name}},
              {"max_slots", config_.max_slots}};
}

Level GatewaySession::level_for_reset(const json& payload, std::uint64_t seed) const {
  if (payload.contains("level")) {
    try {
      return level_from_json(payload["level"]);
    } catch (const ParseError& e) {
      throw ArgError(e.what());
    }
  }
  if (payload.contains("dataset_index")) {
    if (!config_.dataset) throw ArgError("server has no dataset");
    const json& idx = payload["dataset_index"];
    if (!idx.is_number_integer()) throw ArgError("dataset_index must be an integer");
    const auto i = idx.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= config_.dataset->size()) {
      throw ArgError("dataset_index out of range");
    }
    return (*config_.dataset)[static_cast<std::size_t>(i)].level;
  }
  Rng rng(derive_seed(seed, 0x6c65766cULL));
  return generate_level(config_.generator, rng);
}

json GatewaySession::dispatch(const std::string& cmd, int slot, const json& payload) {
  if (cmd == "hello" || cmd == "spec") return describe();

  if (cmd == "close") {
    closed_ = true;
    return json{{"closed", true}};
  }

  if (cmd == "reset") {
    const std::uint64_t seed = seed_from(payload);
    const Level level = level_for_reset(payload, seed);
    if (level.width() != config_.generator.width || level.height() != config_.generator.height) {
      throw ArgError("level size does not match the advertised observation shape");
    }
    auto it = envs_.find(slot);
    if (it == envs_.end()) it = envs_.emplace(slot, BalanceEnv(config_.env)).first;
    return step_result_to_json(it->second.reset(level, seed));
  }

  if (cmd == "step") {
    auto it = envs_.find(slot);
    if (it == envs_.end()) throw StateError("step before reset");
    BalanceEnv& env = it->second;
    if (env.done()) throw StateError("episode finished; reset first");
    if (!payload.contains("action") || !payload["action"].is_array()) {
      throw ArgError("step needs an integer array 'action'");
    }
    std::vector<int> comps;
    for (const json& c : payload["action"]) {
      if (!c.is_number_integer()) throw ArgError("action components must be integers");
      const auto v = c.get<std::int64_t>();
      if (v < INT32_MIN || v > INT32_MAX) throw ArgError("action component out of range");
      comps.push_back(static_cast<int>(v));
    }
    try {
      return step_result_to_json(env.step(comps));
    } catch (const ConfigError& e) {
      throw ArgError(e.what());
    }
  }

  throw CmdError("unknown cmd '" + cmd + "'");
}

std::string GatewaySession::handle_line(std::string_view line) {
  json req_id = nullptr;
  const auto fail = [&](std::string_view code, const std::string& message) {
    return to_line(error_response(req_id, code, message));
  };
  try {
    json req = json::parse(line, nullptr, false);
    if (req.is_discarded()) return fail(errc::kParse, "request is not valid JSON");
    if (!req.is_object()) return fail(errc::kParse, "request must be a JSON object");
    if (req.contains("req_id")) {
      if (!req["req_id"].is_number_integer()) return fail(errc::kParse, "req_id must be an integer");
      req_id = req["req_id"];
    }
    if (!req.contains("cmd") || !req["cmd"].is_string()) {
      return fail(errc::kParse, "missing string field 'cmd'");
    }
    const std::string cmd = req["cmd"].get<std::string>();

    int slot = 0;
    if (req.contains("slot")) {
      const json& s = req["slot"];
      if (!s.is_number_integer() || s.get<std::int64_t>() < 0 ||
          s.get<std::int64_t>() >= config_.max_slots) {
        return fail(errc::kArg, "slot must be an integer in [0, max_slots)");
      }
      slot = static_cast<int>(s.get<std::int64_t>());
    }
    json payload = json::object();
    if (req.contains("payload")) {
      payload = req["payload"];
      if (!payload.is_object()) return fail(errc::kParse, "payload must be an object");
    }

    try {
      return to_line(json{{"req_id", req_id}, {"ok", true}, {"data", dispatch(cmd, slot, payload)}});
    } catch (const CmdError& e) {
      return fail(errc::kCmd, e.what());
    } catch (const StateError& e) {
      return fail(errc::kState, e.what());
    } catch (const UsageError& e) {
      return fail(errc::kState, e.what());
    }
  } catch (const std::exception& e) {
    return fail(errc::kArg, e.what());
  }
}

void serve_stream(const GatewayConfig& config, std::istream& in, std::ostream& out) {
  GatewaySession session(config);
  for (std::string line; !session.closed() && std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out << session.handle_line(line) << '\n' << std::flush;
  }
}

void serve_tcp(const GatewayConfig& config, net::Listener& listener, std::size_t max_connections) {
  std::vector<std::thread> sessions;
  for (std::size_t served = 0; max_connections == 0 || served < max_connections; ++served) {
    net::LineSocket conn;
    try {
      conn = listener.accept();
    } catch (const IoError&) {
      break;
    }
    sessions.emplace_back([&config, sock = std::move(conn)]() mutable {
      GatewaySession session(config);
      try {
        while (!session.closed()) {
          auto line = sock.read_line();
          if (!line) break;
          sock.write_line(session.handle_line(*line));
        }
      } catch (const IoError&) {
        // peer went away
      }
    });
  }
  for (auto& t : sessions) t.join();
}

PolicyClient::PolicyClient(const std::string& host, std::uint16_t port)
    : socket_(net::LineSocket::connect(host, port)) {}

std::vector<int> PolicyClient::act(const StepResult& state) {
  const int id = next_id_++;
  json req = {{"cmd", "act"}, {"req_id", id}, {"payload", step_result_to_json(state)}};
  socket_.write_line(req.dump());
  const auto line = socket_.read_line();
  if (!line) throw ProtocolError("policy peer closed the connection");
  json resp;
  try {
    resp = json::parse(*line);
  } catch (const json::parse_error&) {
    throw ProtocolError("policy peer sent invalid JSON");
  }
  if (!resp.is_object() || resp.value("req_id", json()) != json(id)) {
    throw ProtocolError("policy peer answered out of order");
  }
  if (!resp.value("ok", false)) throw ProtocolError("policy peer reported an error: " + resp.dump());
  try {
    return resp.at("data").at("action").get<std::vector<int>>();
  } catch (const json::exception&) {
    throw ProtocolError("policy response lacks data.action");
  }
}

BalancerResult external_balance(const Level& level, const EnvConfig& env_config,
                                std::uint64_t seed, PolicyClient& policy) {
  BalanceEnv env(env_config);
  StepResult state = env.reset(level, seed);
  BalancerResult result{level, env.estimate(), env.estimate(), 1, {}};
  if (state.info.balanced) return result;
  while (!state.done) {
    const auto comps = policy.act(state);
    SwapAction swap;
    try {
      swap = decode_action(comps, level.height(), level.width(), env_config.variant);
    } catch (const ConfigError& e) {
      throw ProtocolError(std::string("policy peer sent an invalid action: ") + e.what());
    }
    state = env.step(swap);
    result.trace.push_back({swap, true, env.estimate()});
    ++result.evals_used;
  }
  result.final_level = env.level();
  result.final = env.estimate();
  return result;
}

}  // namespace lvlbal
