#pragma once

#include <optional>
#include <vector>

#include "lbbd/model.hpp"

namespace lbbd {

// Exhaustive-enumeration result. optimum is empty when no feasible
// assignment-plus-schedule exists.
struct OracleResult {
  std::optional<int> optimum;
  Assignment witness;
  std::map<int, int> starts;  // job id -> start of the witness schedule
  long long enumerated_count = 0;
};

// Enumerates all m^n assignments and, per facility, all start-time tuples.
// Guard: n*m <= 12 and horizon <= 12, violation throws.
OracleResult oracle_solve(const Instance& instance);

// Single-facility exhaustive solve, the ground truth for the scheduling
// engine and for every cut and relaxation bound.
OracleResult oracle_subproblem(const Instance& instance, int facility_id,
                               const std::vector<int>& job_ids, SubObjective objective);

}  // namespace lbbd
