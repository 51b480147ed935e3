#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lvlbal/balance.hpp"
#include "lvlbal/dataset.hpp"

namespace lvlbal {

// Shortest decimal with at least one fractional digit: 1.0, 0.5, 0.45.
std::string format_b(double b);

// "Timeout:3;MutualDeath:1;MutualGoal:0"
std::string draw_histogram(const DrawBreakdown& draws);

// Columns: level_id, wins1, wins2, draws, b, class, draw_cause_histogram
void write_imbalance_csv(std::ostream& out, const LevelDataset& ds, const ImbalanceSummary& summary);

// One row of a batch balancing run.
struct BatchRow {
  std::string level_id;
  std::string method;
  double initial_b = 0.5;
  double final_b = 0.5;
  bool balanced = false;
  int evals_used = 0;
};

// Columns: level_id, method, initial_b, final_b, balanced, evals_used
void write_batch_csv(std::ostream& out, const std::vector<BatchRow>& rows);
std::vector<BatchRow> read_batch_csv(std::istream& in);

struct BatchSummary {
  std::size_t levels = 0;
  std::size_t initially_balanced = 0;
  std::size_t considered = 0;  // levels - initially_balanced
  std::size_t balanced = 0;    // among considered
  double balanced_fraction = 0.0;
};

// Initially balanced levels are left out of the denominator.
BatchSummary summarize_batch(const std::vector<BatchRow>& rows, double epsilon);

// "Balanced, 0.5" / "Unbalanced, 1.0"; draw-dominated estimates get a
// "[draws 100%]" suffix so levels nobody can win stand out.
std::string caption(const BalanceEstimate& est, double epsilon);

// Two renders side by side with captions underneath.
std::string render_panel(const Level& before, const std::string& before_caption,
                         const Level& after, const std::string& after_caption);

}  // namespace lvlbal
