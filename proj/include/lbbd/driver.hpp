#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "lbbd/master.hpp"
#include "lbbd/model.hpp"

namespace lbbd {

enum class SolveMode { Iterative, BranchAndCheck };

struct SolverConfig {
  SolveMode mode = SolveMode::Iterative;
  int warm_start_count = 0;
  int iteration_budget = 1 << 20;
  double time_budget_s = 1e9;
  bool analytic_cuts = true;
  bool relaxations = true;
  bool nogood_cuts = true;
  bool multi_pass_strengthening = false;
};

enum class SolveStatus { Optimal, Infeasible, BudgetExhausted };

std::string to_string(SolveStatus s);

struct IterationRecord {
  int k = 0;
  Rat z;
  bool subproblem_solved = false;
  std::optional<Rat> v;      // aggregate subproblem value, empty = infinite
  std::optional<Rat> v_min;  // running upper bound, empty = infinite
  std::map<CutTag, int> cuts_added;
  int analytic_skipped = 0;
  long long ms = 0;
};

struct SolveTrace {
  std::map<CutTag, int> relax_cuts;
  std::map<CutTag, int> warm_cuts;
  std::vector<IterationRecord> iterations;
};

struct LbbdResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Rat> value;  // present iff Optimal
  Rat lower;
  std::optional<Rat> upper;  // empty = infinite
  Assignment assignment;     // incumbent, meaningful when upper is finite
  std::map<int, ScheduleOutcome> schedules;
  SolveTrace trace;
  long long total_ms = 0;
  long long master_ms = 0;
  long long subproblem_ms = 0;

  int sub_iterations() const;
};

// Iterate master and subproblems to convergence; Makespan or TotalTardiness.
LbbdResult solve_lbbd(const Instance& instance, const SolverConfig& config);

// Feasibility-subproblem variant for the AssignCost objective.
LbbdResult solve_lbbd_feasibility(const Instance& instance, const SolverConfig& config);

// Single master search generating cuts at integer-feasible nodes.
LbbdResult solve_branch_and_check(const Instance& instance, const SolverConfig& config);

// Dispatch on objective and config.mode.
LbbdResult solve(const Instance& instance, const SolverConfig& config);

// Cuts from heuristically chosen assignments, added before iteration 1.
std::vector<LinearCut> warm_start(const Instance& instance, const SolverConfig& config);

// One line per iteration: "k z v vmin cuts=<tag:count,...> ms=<int>".
void write_trace(const SolveTrace& trace, std::ostream& os);

}  // namespace lbbd
