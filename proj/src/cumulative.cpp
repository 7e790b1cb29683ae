#include "lbbd/cumulative.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lbbd {

FacilitySubproblem make_subproblem(const Instance& instance, int facility_id,
                                   const std::vector<int>& job_ids, SubObjective objective) {
  FacilitySubproblem sp;
  sp.facility = instance.facility(facility_id);
  int fp = instance.facility_pos(facility_id);
  for (int jid : job_ids) {
    const Job& j = instance.job(jid);
    sp.jobs.push_back({j.id, j.release, j.due, j.proc[fp], j.demand[fp]});
  }
  sp.objective = objective;
  sp.horizon = instance.horizon;
  sp.enforce_deadlines = objective != SubObjective::Tardiness;
  return sp;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Search {
  const FacilitySubproblem& sp;
  std::vector<int> order;     // indices into sp.jobs, (due, id) ascending
  std::vector<int> latest;    // per job index, inclusive latest start
  std::vector<int> profile;   // resource usage per time slot
  std::vector<int> start;     // per job index, -1 while unplaced
  int best_value = kInf;
  std::vector<int> best_start;
  bool found = false;

  explicit Search(const FacilitySubproblem& s) : sp(s) {}

  bool fits(const SubJob& j, int s) const {
    for (int t = s; t < s + j.proc; ++t)
      if (profile[t] + j.demand > sp.facility.capacity) return false;
    return true;
  }

  void place(const SubJob& j, int s, int sign) {
    for (int t = s; t < s + j.proc; ++t) profile[t] += sign * j.demand;
  }

  // Earliest start >= r_j that fits the current profile; lower-bounds the
  // job's start in every completion of this node since load only grows.
  int earliest_fit(const SubJob& j) const {
    for (int s = j.release; s <= latest[&j - sp.jobs.data()]; ++s)
      if (fits(j, s)) return s;
    return kInf;
  }

  int lower_bound(size_t depth, int acc) const {
    int lb = acc;
    for (size_t k = depth; k < order.size(); ++k) {
      const SubJob& j = sp.jobs[order[k]];
      int est = earliest_fit(j);
      if (est >= kInf) return kInf;
      if (sp.objective == SubObjective::Tardiness)
        lb += std::max(0, est + j.proc - j.due);
      else
        lb = std::max(lb, est + j.proc);
    }
    return lb;
  }

  void run(size_t depth, int acc) {
    if (found && sp.objective == SubObjective::Feasibility) return;
    int lb = lower_bound(depth, acc);
    if (lb >= kInf) return;
    if (found && lb >= best_value && sp.objective != SubObjective::Feasibility) return;
    if (depth == order.size()) {
      found = true;
      best_value = acc;
      best_start = start;
      return;
    }
    const int idx = order[depth];
    const SubJob& j = sp.jobs[idx];
    for (int s = j.release; s <= latest[idx]; ++s) {
      if (!fits(j, s)) continue;
      place(j, s, +1);
      start[idx] = s;
      int term = sp.objective == SubObjective::Tardiness
                     ? acc + std::max(0, s + j.proc - j.due)
                     : std::max(acc, s + j.proc);
      run(depth + 1, term);
      start[idx] = -1;
      place(j, s, -1);
      if (found && sp.objective == SubObjective::Feasibility) return;
    }
  }
};

}  // namespace

ScheduleOutcome solve_subproblem(const FacilitySubproblem& sp) {
  ScheduleOutcome out;
  if (sp.jobs.empty()) {
    out.status = ScheduleStatus::Optimal;
    out.value = 0;
    return out;
  }

  for (const SubJob& j : sp.jobs) {
    if (j.demand > sp.facility.capacity) {
      if (sp.objective == SubObjective::Tardiness)
        throw std::invalid_argument("job " + std::to_string(j.id) +
                                    " demand exceeds capacity in a tardiness subproblem");
      out.status = ScheduleStatus::Infeasible;
      return out;
    }
  }

  Search search(sp);
  int total_proc = 0, max_release = 0;
  for (const SubJob& j : sp.jobs) {
    total_proc += j.proc;
    max_release = std::max(max_release, j.release);
  }
  // Some optimal schedule keeps every start within max release + total work:
  // any later start could be jointly left-shifted across an idle instant.
  int cap = std::min(sp.horizon, max_release + total_proc);

  search.latest.resize(sp.jobs.size());
  for (size_t k = 0; k < sp.jobs.size(); ++k) {
    const SubJob& j = sp.jobs[k];
    if (sp.enforce_deadlines) {
      search.latest[k] = std::min(j.due - j.proc, cap);
      if (search.latest[k] < j.release) {
        out.status = ScheduleStatus::Infeasible;
        return out;
      }
    } else {
      search.latest[k] = cap;
      if (search.latest[k] < j.release)
        throw std::runtime_error("horizon exhausted: job " + std::to_string(j.id) +
                                 " releases after the schedule horizon");
    }
  }

  search.order.resize(sp.jobs.size());
  for (size_t k = 0; k < sp.jobs.size(); ++k) search.order[k] = static_cast<int>(k);
  std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
    if (sp.jobs[a].due != sp.jobs[b].due) return sp.jobs[a].due < sp.jobs[b].due;
    return sp.jobs[a].id < sp.jobs[b].id;
  });

  int max_end = 0;
  for (size_t k = 0; k < sp.jobs.size(); ++k)
    max_end = std::max(max_end, search.latest[k] + sp.jobs[k].proc);
  search.profile.assign(max_end + 1, 0);
  search.start.assign(sp.jobs.size(), -1);

  search.run(0, 0);

  if (!search.found) {
    out.status = ScheduleStatus::Infeasible;
    return out;
  }
  out.status = ScheduleStatus::Optimal;
  out.value = sp.objective == SubObjective::Feasibility ? 0 : search.best_value;
  for (size_t k = 0; k < sp.jobs.size(); ++k) out.starts[sp.jobs[k].id] = search.best_start[k];
  return out;
}

ScheduleOutcome min_makespan_of(const Instance& instance, int facility_id,
                                const std::vector<int>& job_ids) {
  return solve_subproblem(make_subproblem(instance, facility_id, job_ids, SubObjective::Makespan));
}

ScheduleOutcome min_makespan_free(const Instance& instance, int facility_id,
                                  const std::vector<int>& job_ids) {
  FacilitySubproblem sp = make_subproblem(instance, facility_id, job_ids, SubObjective::Makespan);
  sp.enforce_deadlines = false;
  return solve_subproblem(sp);
}

ScheduleOutcome min_tardiness_of(const Instance& instance, int facility_id,
                                 const std::vector<int>& job_ids) {
  return solve_subproblem(make_subproblem(instance, facility_id, job_ids, SubObjective::Tardiness));
}

ScheduleOutcome feasibility_of(const Instance& instance, int facility_id,
                               const std::vector<int>& job_ids) {
  return solve_subproblem(
      make_subproblem(instance, facility_id, job_ids, SubObjective::Feasibility));
}

std::optional<int> schedule_value(const FacilitySubproblem& sp, const std::map<int, int>& starts) {
  int max_end = 0;
  for (const SubJob& j : sp.jobs) {
    auto it = starts.find(j.id);
    if (it == starts.end()) return std::nullopt;
    int s = it->second;
    if (s < j.release) return std::nullopt;
    if (sp.enforce_deadlines && s + j.proc > j.due) return std::nullopt;
    max_end = std::max(max_end, s + j.proc);
  }
  std::vector<int> profile(max_end + 1, 0);
  for (const SubJob& j : sp.jobs) {
    int s = starts.at(j.id);
    for (int t = s; t < s + j.proc; ++t) {
      profile[t] += j.demand;
      if (profile[t] > sp.facility.capacity) return std::nullopt;
    }
  }
  int value = 0;
  for (const SubJob& j : sp.jobs) {
    int end = starts.at(j.id) + j.proc;
    if (sp.objective == SubObjective::Tardiness)
      value += std::max(0, end - j.due);
    else if (sp.objective == SubObjective::Makespan)
      value = std::max(value, end);
  }
  return value;
}

}  // namespace lbbd
