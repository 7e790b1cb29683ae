#pragma once

#include <vector>

namespace lbbd::lp {

enum class LpStatus { Optimal, Infeasible };

struct Row {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
  char sense = '>';                           // '<', '=' or '>'
  double rhs = 0.0;
};

// min objective . x  subject to rows, lower <= x <= upper.
// Upper bounds may be +infinity; lower bounds must be finite.
struct Problem {
  int num_cols = 0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;
};

struct Solution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// Dense two-phase tableau simplex with Bland's rule.
Solution solve(const Problem& problem);

}  // namespace lbbd::lp
