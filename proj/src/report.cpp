#include "lvlbal/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "lvlbal/errors.hpp"

namespace lvlbal {

std::string format_b(double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", b);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

std::string draw_histogram(const DrawBreakdown& draws) {
  return "Timeout:" + std::to_string(draws.timeout) + ";MutualDeath:" +
         std::to_string(draws.mutual_death) + ";MutualGoal:" + std::to_string(draws.mutual_goal);
}

void write_imbalance_csv(std::ostream& out, const LevelDataset& ds, const ImbalanceSummary& summary) {
  out << "level_id,wins1,wins2,draws,b,class,draw_cause_histogram\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const BalanceEstimate& e = summary.estimates[i];
    out << ds[i].id << ',' << e.wins1() << ',' << e.wins2() << ',' << e.draws() << ','
        << format_b(e.b()) << ',' << class_name(summary.classes[i]) << ','
        << draw_histogram(e.draw_breakdown()) << '\n';
  }
}

void write_batch_csv(std::ostream& out, const std::vector<BatchRow>& rows) {
  out << "level_id,method,initial_b,final_b,balanced,evals_used\n";
  for (const auto& r : rows) {
    out << r.level_id << ',' << r.method << ',' << format_b(r.initial_b) << ','
        << format_b(r.final_b) << ',' << (r.balanced ? "true" : "false") << ',' << r.evals_used
        << '\n';
  }
}

std::vector<BatchRow> read_batch_csv(std::istream& in) {
  std::vector<BatchRow> rows;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return rows;
  ++line_no;
  if (line != "level_id,method,initial_b,final_b,balanced,evals_used") {
    throw ParseError("unexpected batch CSV header", line_no);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw ParseError("expected 6 columns", line_no);
    try {
      BatchRow r{f[0], f[1], std::stod(f[2]), std::stod(f[3]), f[4] == "true", std::stoi(f[5])};
      if (f[4] != "true" && f[4] != "false") throw ParseError("balanced must be true/false", line_no);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError("bad number", line_no);
    }
  }
  return rows;
}

BatchSummary summarize_batch(const std::vector<BatchRow>& rows, double epsilon) {
  BatchSummary s;
  s.levels = rows.size();
  for (const auto& r : rows) {
    if (std::abs(r.initial_b - 0.5) <= epsilon + 1e-9) {
      ++s.initially_balanced;
      continue;
    }
    ++s.considered;
    s.balanced += r.balanced;
  }
  s.balanced_fraction = s.considered ? static_cast<double>(s.balanced) / s.considered : 0.0;
  return s;
}

std::string caption(const BalanceEstimate& est, double epsilon) {
  std::string c = is_balanced(est, epsilon) ? "Balanced, " : "Unbalanced, ";
  c += format_b(est.b());
  if (2 * est.draws() > est.n_sims()) {
    c += " [draws " + std::to_string(static_cast<int>(std::lround(100.0 * est.draw_fraction()))) + "%]";
  }
  return c;
}

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  return lines;
}

}  // namespace

std::string render_panel(const Level& before, const std::string& before_caption,
                         const Level& after, const std::string& after_caption) {
  auto left = lines_of(render_ascii(before));
  auto right = lines_of(render_ascii(after));
  left.push_back(before_caption);
  right.push_back(after_caption);

  std::size_t width = 0;
  for (const auto& l : left) width = std::max(width, l.size());
  const std::size_t rows = std::max(left.size(), right.size());
  // Keep captions on the last line even when the grids differ in height.
  while (left.size() < rows) left.insert(left.end() - 1, "");
  while (right.size() < rows) right.insert(right.end() - 1, "");

  std::string out;
  for (std::size_t i = 0; i < rows; ++i) {
    std::string line = left[i] + std::string(width - left[i].size() + 4, ' ') + right[i];
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

}  // namespace lvlbal
