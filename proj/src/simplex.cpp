#include "lbbd/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lbbd::lp {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Solution solve(const Problem& problem) {
  const int n = problem.num_cols;

  // Shift to y = x - lower >= 0 and turn finite upper bounds into rows.
  std::vector<Row> rows = problem.rows;
  for (int c = 0; c < n; ++c) {
    if (problem.upper[c] < kInf) {
      Row r;
      r.terms = {{c, 1.0}};
      r.sense = '<';
      r.rhs = problem.upper[c];
      rows.push_back(r);
    }
  }
  for (Row& r : rows)
    for (auto& [c, a] : r.terms) r.rhs -= a * problem.lower[c];

  const int nrows = static_cast<int>(rows.size());

  // Column layout: structural | slack/surplus | artificial.
  int num_slack = 0;
  for (const Row& r : rows)
    if (r.sense != '=') ++num_slack;
  int total = n + num_slack + nrows;  // artificial per row, some unused

  std::vector<std::vector<double>> tab(nrows, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(nrows, -1);
  std::vector<bool> artificial(total, false);

  int slack_at = n;
  int art_at = n + num_slack;
  for (int r = 0; r < nrows; ++r) {
    double sign = rows[r].rhs < 0 ? -1.0 : 1.0;
    for (const auto& [c, a] : rows[r].terms) tab[r][c] += sign * a;
    tab[r][total] = sign * rows[r].rhs;
    char sense = rows[r].sense;
    if (sign < 0) sense = sense == '<' ? '>' : (sense == '>' ? '<' : '=');
    if (sense == '<') {
      tab[r][slack_at] = 1.0;
      basis[r] = slack_at++;
    } else if (sense == '>') {
      tab[r][slack_at++] = -1.0;
      tab[r][art_at] = 1.0;
      artificial[art_at] = true;
      basis[r] = art_at++;
    } else {
      tab[r][art_at] = 1.0;
      artificial[art_at] = true;
      basis[r] = art_at++;
    }
  }

  std::vector<double> obj_row(total + 1, 0.0);
  std::vector<bool> blocked(total, false);

  auto pivot = [&](int pr, int pc) {
    double p = tab[pr][pc];
    for (int c = 0; c <= total; ++c) tab[pr][c] /= p;
    for (int r = 0; r < nrows; ++r) {
      if (r == pr || std::abs(tab[r][pc]) < 1e-12) continue;
      double f = tab[r][pc];
      for (int c = 0; c <= total; ++c) tab[r][c] -= f * tab[pr][c];
    }
    double f = obj_row[pc];
    if (std::abs(f) > 1e-12)
      for (int c = 0; c <= total; ++c) obj_row[c] -= f * tab[pr][c];
    basis[pr] = pc;
  };

  // Bland's rule keeps the iteration finite on degenerate bases.
  auto optimize = [&]() {
    while (true) {
      int enter = -1;
      for (int c = 0; c < total; ++c) {
        if (blocked[c]) continue;
        if (obj_row[c] < -kEps) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      double best_ratio = kInf;
      for (int r = 0; r < nrows; ++r) {
        if (tab[r][enter] > kEps) {
          double ratio = tab[r][total] / tab[r][enter];
          if (ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps && (leave < 0 || basis[r] < basis[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) throw std::runtime_error("unbounded linear program");
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the artificial sum.
  for (int r = 0; r < nrows; ++r)
    if (artificial[basis[r]])
      for (int c = 0; c <= total; ++c) obj_row[c] -= tab[r][c];
  optimize();

  Solution sol;
  if (-obj_row[total] > 1e-7) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  // Drive leftover artificials out of the basis where possible.
  for (int r = 0; r < nrows; ++r) {
    if (!artificial[basis[r]]) continue;
    int pc = -1;
    for (int c = 0; c < n + num_slack; ++c)
      if (std::abs(tab[r][c]) > 1e-7) {
        pc = c;
        break;
      }
    if (pc >= 0) pivot(r, pc);
  }
  for (int c = 0; c < total; ++c)
    if (artificial[c]) blocked[c] = true;

  // Phase 2.
  std::fill(obj_row.begin(), obj_row.end(), 0.0);
  for (int c = 0; c < n; ++c) obj_row[c] = problem.objective[c];
  for (int r = 0; r < nrows; ++r) {
    double f = obj_row[basis[r]];
    if (std::abs(f) > 1e-12)
      for (int c = 0; c <= total; ++c) obj_row[c] -= f * tab[r][c];
  }
  optimize();

  sol.status = LpStatus::Optimal;
  sol.x.assign(n, 0.0);
  for (int r = 0; r < nrows; ++r)
    if (basis[r] < n) sol.x[basis[r]] = tab[r][total];
  for (int c = 0; c < n; ++c) sol.x[c] += problem.lower[c];
  sol.value = 0.0;
  for (int c = 0; c < n; ++c) sol.value += problem.objective[c] * sol.x[c];
  return sol;
}

}  // namespace lbbd::lp
