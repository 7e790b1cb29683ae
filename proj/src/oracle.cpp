#include "lbbd/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lbbd {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct OracleJob {
  int id;
  int release;
  int due;
  int proc;
  int demand;
};

// Plain recursive enumeration of start tuples in the jobs' given order.
// Prunes only on constraint violation, never on objective value.
struct Enumerator {
  SubObjective objective;
  bool enforce_deadlines;
  int capacity = 1;
  std::vector<OracleJob> jobs;
  std::vector<int> latest;
  std::vector<int> usage;
  std::vector<int> start;
  std::vector<int> best_start;
  int best = kInf;
  bool found = false;
  long long leaves = 0;

  bool can_place(const OracleJob& j, int s) const {
    for (int t = s; t < s + j.proc; ++t)
      if (usage[t] + j.demand > capacity) return false;
    return true;
  }

  void recurse(size_t k, int value) {
    if (k == jobs.size()) {
      ++leaves;
      found = true;
      if (value < best) {
        best = value;
        best_start = start;
      }
      return;
    }
    const OracleJob& j = jobs[k];
    for (int s = j.release; s <= latest[k]; ++s) {
      if (!can_place(j, s)) continue;
      for (int t = s; t < s + j.proc; ++t) usage[t] += j.demand;
      start[k] = s;
      int term = objective == SubObjective::Tardiness ? value + std::max(0, s + j.proc - j.due)
                                                      : std::max(value, s + j.proc);
      recurse(k + 1, objective == SubObjective::Feasibility ? 0 : term);
      for (int t = s; t < s + j.proc; ++t) usage[t] -= j.demand;
      if (found && objective == SubObjective::Feasibility) return;
    }
  }
};

struct SubResult {
  std::optional<int> value;
  std::map<int, int> starts;
  long long leaves = 0;
};

SubResult enumerate_facility(const Instance& instance, int facility_id,
                             const std::vector<int>& job_ids, SubObjective objective) {
  SubResult res;
  if (job_ids.empty()) {
    res.value = 0;
    return res;
  }
  Enumerator e;
  e.objective = objective;
  e.enforce_deadlines = objective != SubObjective::Tardiness;
  e.capacity = instance.facility(facility_id).capacity;
  int fp = instance.facility_pos(facility_id);
  int total_proc = 0, max_release = 0;
  for (int jid : job_ids) {
    const Job& j = instance.job(jid);
    e.jobs.push_back({j.id, j.release, j.due, j.proc[fp], j.demand[fp]});
    total_proc += j.proc[fp];
    max_release = std::max(max_release, j.release);
  }
  for (const OracleJob& j : e.jobs)
    if (j.demand > e.capacity) {
      if (objective == SubObjective::Tardiness)
        throw std::invalid_argument("tardiness subproblem with demand above capacity");
      return res;  // infeasible
    }

  // Joint left shifts keep some optimal schedule inside this window.
  int cap = std::min(instance.horizon, max_release + total_proc);
  e.latest.resize(e.jobs.size());
  int max_end = 0;
  for (size_t k = 0; k < e.jobs.size(); ++k) {
    const OracleJob& j = e.jobs[k];
    e.latest[k] = e.enforce_deadlines ? std::min(j.due - j.proc, cap) : cap;
    if (e.latest[k] < j.release) {
      if (!e.enforce_deadlines)
        throw std::runtime_error("oracle horizon exhausted for job " + std::to_string(j.id));
      return res;  // window already empty
    }
    max_end = std::max(max_end, e.latest[k] + j.proc);
  }
  e.usage.assign(max_end + 1, 0);
  e.start.assign(e.jobs.size(), -1);
  e.recurse(0, 0);
  res.leaves = e.leaves;
  if (!e.found) return res;
  res.value = objective == SubObjective::Feasibility ? 0 : e.best;
  for (size_t k = 0; k < e.jobs.size(); ++k)
    res.starts[e.jobs[k].id] = objective == SubObjective::Feasibility ? e.start[k] : e.best_start[k];
  return res;
}

void check_guard(const Instance& instance) {
  long long nm = static_cast<long long>(instance.jobs.size()) * instance.facilities.size();
  if (nm > 12 || instance.horizon > 12)
    throw std::invalid_argument("oracle size guard exceeded (n*m <= 12, horizon <= 12)");
}

}  // namespace

OracleResult oracle_subproblem(const Instance& instance, int facility_id,
                               const std::vector<int>& job_ids, SubObjective objective) {
  if (job_ids.size() > 12 || instance.horizon > 12)
    throw std::invalid_argument("oracle size guard exceeded (n*m <= 12, horizon <= 12)");
  OracleResult out;
  SubResult sub = enumerate_facility(instance, facility_id, job_ids, objective);
  out.optimum = sub.value;
  out.starts = sub.starts;
  out.enumerated_count = std::max<long long>(sub.leaves, 1);
  for (int jid : job_ids) out.witness.facility_of[jid] = facility_id;
  return out;
}

OracleResult oracle_solve(const Instance& instance) {
  check_guard(instance);
  OracleResult out;
  const size_t n = instance.jobs.size();
  const size_t m = instance.facilities.size();

  SubObjective sub_obj;
  switch (instance.objective) {
    case Objective::Makespan: sub_obj = SubObjective::Makespan; break;
    case Objective::AssignCost: sub_obj = SubObjective::Feasibility; break;
    case Objective::TotalTardiness: sub_obj = SubObjective::Tardiness; break;
    default: throw std::logic_error("unknown objective");
  }

  long long count = 1;
  for (size_t k = 0; k < n; ++k) count *= static_cast<long long>(m);

  int best = kInf;
  for (long long code = 0; code < count; ++code) {
    ++out.enumerated_count;
    Assignment a;
    long long c = code;
    for (size_t k = 0; k < n; ++k) {
      a.facility_of[instance.jobs[k].id] = instance.facilities[c % m].id;
      c /= m;
    }

    bool feasible = true;
    int value = 0;
    std::map<int, int> starts;
    for (const Facility& f : instance.facilities) {
      std::vector<int> on = a.jobs_on(f.id);
      SubResult sub = enumerate_facility(instance, f.id, on, sub_obj);
      if (!sub.value) {
        feasible = false;
        break;
      }
      switch (instance.objective) {
        case Objective::Makespan: value = std::max(value, *sub.value); break;
        case Objective::TotalTardiness: value += *sub.value; break;
        case Objective::AssignCost: break;
      }
      for (const auto& [jid, s] : sub.starts) starts[jid] = s;
    }
    if (!feasible) continue;
    if (instance.objective == Objective::AssignCost) {
      value = 0;
      for (const auto& [jid, fid] : a.facility_of)
        value += instance.job(jid).cost[instance.facility_pos(fid)];
    }
    if (value < best) {
      best = value;
      out.optimum = value;
      out.witness = a;
      out.starts = starts;
    }
  }
  return out;
}

}  // namespace lbbd
