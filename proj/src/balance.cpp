#include "lvlbal/balance.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lvlbal/errors.hpp"
#include "lvlbal/random.hpp"

namespace lvlbal {

BalanceEstimate::BalanceEstimate(int n_sims, int wins1, int wins2, DrawBreakdown draws)
    : n_sims_(n_sims), wins1_(wins1), wins2_(wins2), draws_(draws) {
  if (n_sims < 1 || wins1 < 0 || wins2 < 0 || draws.timeout < 0 || draws.mutual_death < 0 ||
      draws.mutual_goal < 0) {
    throw ConfigError("balance estimate: counts must be non-negative and n_sims >= 1");
  }
  if (wins1 + wins2 + draws.total() != n_sims) {
    throw ConfigError("balance estimate: wins1 + wins2 + draws must equal n_sims");
  }
}

int BalanceEstimate::imbalance_halves() const { return std::abs(score_halves() - n_sims_); }

void EvalConfig::validate() const {
  if (n_sims < 1) throw ConfigError("eval: n_sims must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw ConfigError("eval: epsilon must lie in [0, 0.5]");
  match.validate();
}

std::uint64_t simulation_seed(std::uint64_t base_seed, int index) {
  return derive_seed(base_seed, static_cast<std::uint64_t>(index));
}

std::uint64_t level_seed(std::uint64_t base_seed, std::size_t index) {
  return derive_seed(base_seed ^ 0x5bd1e995ULL, index);
}

BalanceEstimate estimate_balance(const Level& level, const ArchetypeSpec& p1,
                                 const ArchetypeSpec& p2, const EvalConfig& cfg) {
  cfg.validate();
  int wins1 = 0;
  int wins2 = 0;
  DrawBreakdown draws;
  MatchConfig match = cfg.match;
  for (int i = 0; i < cfg.n_sims; ++i) {
    match.seed = simulation_seed(cfg.base_seed, i);
    const MatchOutcome out = run_match(level, p1, p2, match);
    switch (out.winner) {
      case Winner::Player1:
        ++wins1;
        break;
      case Winner::Player2:
        ++wins2;
        break;
      case Winner::Draw:
        if (out.cause == EndCause::Timeout) ++draws.timeout;
        if (out.cause == EndCause::MutualDeath) ++draws.mutual_death;
        if (out.cause == EndCause::MutualGoal) ++draws.mutual_goal;
        break;
    }
  }
  return BalanceEstimate(cfg.n_sims, wins1, wins2, draws);
}

std::string_view class_name(BalanceClass c) {
  switch (c) {
    case BalanceClass::Balanced:
      return "balanced";
    case BalanceClass::FavorsP1:
      return "favors_p1";
    case BalanceClass::FavorsP2:
      return "favors_p2";
  }
  return "?";
}

bool is_balanced(const BalanceEstimate& est, double epsilon) {
  // imbalance_halves / (2n) <= epsilon, with slack for epsilon's own rounding.
  return est.imbalance_halves() <= epsilon * 2.0 * est.n_sims() + 1e-9;
}

BalanceClass classify(const BalanceEstimate& est, double epsilon) {
  if (is_balanced(est, epsilon)) return BalanceClass::Balanced;
  return est.score_halves() > est.n_sims() ? BalanceClass::FavorsP1 : BalanceClass::FavorsP2;
}

double ImbalanceSummary::favor1_share() const {
  const double unbalanced = frac_favor1 + frac_favor2;
  return unbalanced > 0.0 ? frac_favor1 / unbalanced : 0.5;
}

double ImbalanceSummary::initial_imbalance() const {
  const double unbalanced = frac_favor1 + frac_favor2;
  return unbalanced > 0.0 ? std::max(frac_favor1, frac_favor2) / unbalanced : 0.5;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ImbalanceSummary dataset_imbalance(const LevelDataset& ds, const ArchetypeSpec& p1,
                                   const ArchetypeSpec& p2, const EvalConfig& cfg,
                                   unsigned threads) {
  if (ds.empty()) throw UsageError("dataset_imbalance: empty dataset");
  cfg.validate();

  std::vector<std::optional<BalanceEstimate>> slots(ds.size());
  parallel_for(ds.size(), threads, [&](std::size_t i) {
    EvalConfig level_cfg = cfg;
    level_cfg.base_seed = level_seed(cfg.base_seed, i);
    slots[i] = estimate_balance(ds[i].level, p1, p2, level_cfg);
  });

  ImbalanceSummary out;
  std::size_t favor1 = 0, favor2 = 0, balanced = 0;
  for (auto& slot : slots) {
    const BalanceClass c = classify(*slot, cfg.epsilon);
    favor1 += c == BalanceClass::FavorsP1;
    favor2 += c == BalanceClass::FavorsP2;
    balanced += c == BalanceClass::Balanced;
    out.estimates.push_back(*slot);
    out.classes.push_back(c);
  }
  const double n = static_cast<double>(ds.size());
  out.frac_favor1 = static_cast<double>(favor1) / n;
  out.frac_favor2 = static_cast<double>(favor2) / n;
  out.frac_balanced = static_cast<double>(balanced) / n;
  return out;
}

}  // namespace lvlbal
