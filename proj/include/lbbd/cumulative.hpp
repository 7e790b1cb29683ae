#pragma once

#include <optional>
#include <vector>

#include "lbbd/model.hpp"

namespace lbbd {

// One job's data on a fixed facility.
struct SubJob {
  int id = 0;
  int release = 0;
  int due = 0;
  int proc = 0;
  int demand = 0;
};

struct FacilitySubproblem {
  Facility facility;
  std::vector<SubJob> jobs;
  SubObjective objective = SubObjective::Makespan;
  int horizon = 0;
  // Hard windows r_j <= s_j <= d_j - p_j apply when true; Tardiness always
  // runs with this off (only r_j <= s_j).
  bool enforce_deadlines = true;
};

FacilitySubproblem make_subproblem(const Instance& instance, int facility_id,
                                   const std::vector<int>& job_ids, SubObjective objective);

// Exact depth-first branch and bound over start times with time-table
// pruning against the running resource profile. Deterministic: jobs are
// placed in (due, id) order and start times are tried ascending.
ScheduleOutcome solve_subproblem(const FacilitySubproblem& sp);

// Min-makespan re-solve primitive used by the cut strengthening loops.
ScheduleOutcome min_makespan_of(const Instance& instance, int facility_id,
                                const std::vector<int>& job_ids);

// Same, ignoring deadlines entirely.
ScheduleOutcome min_makespan_free(const Instance& instance, int facility_id,
                                  const std::vector<int>& job_ids);

ScheduleOutcome min_tardiness_of(const Instance& instance, int facility_id,
                                 const std::vector<int>& job_ids);

ScheduleOutcome feasibility_of(const Instance& instance, int facility_id,
                               const std::vector<int>& job_ids);

// Objective value of a given start-time map, or nullopt if it violates a
// window or the capacity profile. Used by tests and outcome checks.
std::optional<int> schedule_value(const FacilitySubproblem& sp, const std::map<int, int>& starts);

}  // namespace lbbd
