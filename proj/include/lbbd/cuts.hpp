#pragma once

#include <optional>
#include <vector>

#include "lbbd/model.hpp"

namespace lbbd {

// Inputs for cut generation after one round of subproblem solves.
struct CutContext {
  const Instance& instance;
  Assignment assignment;
  std::map<int, ScheduleOutcome> outcomes;  // facility id -> outcome on its job set
  bool multi_pass = false;                  // rerun the removal loop to a fixpoint
};

// Greedy support reduction: drop jobs one at a time (ascending id) and keep
// each removal that leaves the minimum makespan at the original value.
std::vector<int> strengthen_support_makespan(const CutContext& ctx, int facility_id);

// Same loop for an infeasible facility: keep removals that stay infeasible.
std::vector<int> strengthen_support_infeasible(const Instance& instance, int facility_id,
                                               const std::vector<int>& job_ids,
                                               bool multi_pass = false);

// Mvar(i) >= M* (1 - sum_{j in support} (1 - X(i,j)))
LinearCut nogood_makespan_cut(int facility_id, const std::vector<int>& support, int makespan);

// Mvar(i) >= M* - sum p_ij (1 - X(i,j)) - (max d - min d); requires all
// release times zero over the support.
LinearCut analytic_makespan_cut_deadlines(const Instance& instance, int facility_id,
                                          const std::vector<int>& support, int makespan);

// Mvar(i) >= M* - sum p_ij (1 - X(i,j)) - (max r - min r); requires that no
// deadline can bind any subset schedule of the support.
LinearCut analytic_makespan_cut_releases(const Instance& instance, int facility_id,
                                         const std::vector<int>& support, int makespan);

// sum_{j in support} (1 - X(i,j)) >= 1
LinearCut feasibility_nogood_cut(int facility_id, const std::vector<int>& support);

// The pair of tardiness cuts: one anchored on the full job set, one on the
// set with individually removable jobs dropped.
std::vector<LinearCut> tardiness_nogood_cuts(const CutContext& ctx, int facility_id);

// Tvar(i) >= M*_free - sum p_ij (1 - X(i,j)) - max d. Emitted only for a
// unit-capacity facility with unit demands and all-zero releases; empty
// otherwise.
std::optional<LinearCut> analytic_tardiness_cut(const CutContext& ctx, int facility_id);

// Gate helpers for the analytic generators.
bool releases_all_zero(const Instance& instance, const std::vector<int>& job_ids);
bool deadlines_nonbinding(const Instance& instance, int facility_id,
                          const std::vector<int>& job_ids);
bool disjunctive_facility(const Instance& instance, int facility_id,
                          const std::vector<int>& job_ids);

}  // namespace lbbd
