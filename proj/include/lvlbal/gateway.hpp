#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lvlbal/dataset.hpp"
#include "lvlbal/mdp.hpp"
#include "lvlbal/net.hpp"
#include "lvlbal/search.hpp"

namespace lvlbal {

inline constexpr int kProtocolVersion = 1;

// Error codes carried in {"ok": false, "error": {"code", "message"}}.
namespace errc {
inline constexpr std::string_view kParse = "E_PARSE";  // not a JSON object / bad envelope
inline constexpr std::string_view kCmd = "E_CMD";      // unknown cmd
inline constexpr std::string_view kState = "E_STATE";  // step before reset or after done
inline constexpr std::string_view kArg = "E_ARG";      // malformed payload
}  // namespace errc

struct GatewayConfig {
  EnvConfig env;
  // Size and distribution of levels generated when reset names no level.
  GeneratorConfig generator;
  // Optional pool for reset {"dataset_index": i}.
  std::optional<LevelDataset> dataset;
  int max_slots = 64;
};

// One protocol session: a request is one JSON object per line,
//   {"cmd": "hello|spec|reset|step|close", "req_id": n, "slot": k, "payload": {...}}
// and every request gets exactly one response line with the same req_id,
//   {"req_id": n, "ok": true, "data": {...}} or {"req_id": n, "ok": false, "error": {...}}.
// Slots are independent environments for vectorized trainers (default 0).
class GatewaySession {
 public:
  explicit GatewaySession(GatewayConfig config);

  // Never throws on bad input; malformed requests become error responses.
  std::string handle_line(std::string_view line);
  bool closed() const { return closed_; }

 private:
  nlohmann::json dispatch(const std::string& cmd, int slot, const nlohmann::json& payload);
  nlohmann::json describe() const;
  Level level_for_reset(const nlohmann::json& payload, std::uint64_t seed) const;

  GatewayConfig config_;
  std::map<int, BalanceEnv> envs_;
  bool closed_ = false;
};

// Serves one session over a pair of streams until close or EOF.
void serve_stream(const GatewayConfig& config, std::istream& in, std::ostream& out);

// Accepts connections and runs one session per connection on its own thread.
// Returns after `max_connections` sessions ended (0 = serve forever).
void serve_tcp(const GatewayConfig& config, net::Listener& listener,
               std::size_t max_connections = 0);

nlohmann::json observation_to_json(const Observation& obs);
nlohmann::json step_result_to_json(const StepResult& r);
nlohmann::json level_to_json(const Level& level);
Level level_from_json(const nlohmann::json& j);

// Client side of an external policy: sends
//   {"cmd": "act", "req_id": n, "payload": {"obs": [[...]], "info": {...}}}
// and expects {"req_id": n, "ok": true, "data": {"action": [...]}}.
class PolicyClient {
 public:
  // Throws IoError when nobody listens at the endpoint.
  PolicyClient(const std::string& host, std::uint16_t port);

  std::vector<int> act(const StepResult& state);

 private:
  net::LineSocket socket_;
  int next_id_ = 1;
};

// One episode driven by an external policy, reported like the search baselines.
BalancerResult external_balance(const Level& level, const EnvConfig& env_config,
                                std::uint64_t seed, PolicyClient& policy);

}  // namespace lvlbal
