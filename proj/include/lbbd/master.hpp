#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbbd/model.hpp"
#include "lbbd/simplex.hpp"

namespace lbbd {

// 0-1 integer program over the assignment variables plus the per-facility
// bound variables, solved by LP-based branch and bound.
struct MasterModel {
  Instance instance;
  Objective objective = Objective::Makespan;

  struct Column {
    VarKey key;
    double lower = 0.0;
    double upper = 0.0;
    double obj = 0.0;
  };
  std::vector<Column> cols;
  std::map<VarKey, int> col_of;
  std::vector<lp::Row> base_rows;  // partition + epigraph rows, never removed
  std::vector<LinearCut> cut_pool;

  // Set when some job has no assignable facility; detected while building.
  std::optional<int> infeasible_job;

  bool has_var(const VarKey& k) const { return col_of.count(k) > 0; }
};

struct MasterSolution {
  enum class Status { Optimal, Infeasible, Stopped };
  Status status = Status::Infeasible;
  double objective = 0.0;
  Assignment assignment;
  std::map<VarKey, double> values;
  double lower_bound = 0.0;  // best bound at return, equals objective on Optimal
  long long nodes = 0;
};

// Passed to the integer-node callback: the candidate assignment plus the
// node's variable values and the search's global lower bound.
struct IntegerNode {
  const Assignment& assignment;
  const std::map<VarKey, double>& values;
  double objective = 0.0;
  double lower_bound = 0.0;
};

using NodeCallback = std::function<std::vector<LinearCut>(const IntegerNode&)>;
using StopCheck = std::function<bool()>;

MasterModel build_master(const Instance& instance, Objective objective);

// Appends to the cut pool; duplicate cuts are accepted. Throws
// std::invalid_argument when a key does not name a model variable.
void add_cut(MasterModel& model, const LinearCut& cut);

// Exact branch and bound. The callback, when given, runs at every node whose
// relaxation is integral in X; returned cuts join the pool and the node is
// re-solved, an empty return lets the node become incumbent.
MasterSolution solve_master(MasterModel& model, const NodeCallback& on_integer_node = {},
                            const StopCheck& should_stop = {});

// Root LP relaxation (integrality dropped).
lp::Solution solve_relaxation(const MasterModel& model);

// Exact master objective at an integral assignment, replaying the cut pool
// in rational arithmetic.
Rat exact_objective_at(const MasterModel& model, const Assignment& assignment);

// LP-format text dump for debugging.
std::string dump_lp(const MasterModel& model);

}  // namespace lbbd
