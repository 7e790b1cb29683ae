#include "lbbd/cuts.hpp"

#include <algorithm>
#include <stdexcept>

#include "lbbd/cumulative.hpp"

namespace lbbd {

bool releases_all_zero(const Instance& instance, const std::vector<int>& job_ids) {
  return std::all_of(job_ids.begin(), job_ids.end(),
                     [&](int jid) { return instance.job(jid).release == 0; });
}

bool deadlines_nonbinding(const Instance& instance, int facility_id,
                          const std::vector<int>& job_ids) {
  if (job_ids.empty()) return true;
  int fp = instance.facility_pos(facility_id);
  int max_r = 0, total_p = 0;
  for (int jid : job_ids) {
    const Job& j = instance.job(jid);
    max_r = std::max(max_r, j.release);
    total_p += j.proc[fp];
  }
  // Every subset schedule finishes by max_r + total_p, so deadlines at or
  // beyond that bound can never constrain an optimal schedule.
  return std::all_of(job_ids.begin(), job_ids.end(), [&](int jid) {
    return instance.job(jid).due >= max_r + total_p;
  });
}

bool disjunctive_facility(const Instance& instance, int facility_id,
                          const std::vector<int>& job_ids) {
  if (instance.facility(facility_id).capacity != 1) return false;
  int fp = instance.facility_pos(facility_id);
  return std::all_of(job_ids.begin(), job_ids.end(),
                     [&](int jid) { return instance.job(jid).demand[fp] == 1; });
}

std::vector<int> strengthen_support_makespan(const CutContext& ctx, int facility_id) {
  const ScheduleOutcome& outcome = ctx.outcomes.at(facility_id);
  if (outcome.status != ScheduleStatus::Optimal)
    throw std::logic_error("makespan support requested for an infeasible facility");
  std::vector<int> support = ctx.assignment.jobs_on(facility_id);
  const int target = outcome.value;

  bool changed = true;
  bool first_pass = true;
  while (changed && (first_pass || ctx.multi_pass)) {
    changed = false;
    first_pass = false;
    for (size_t k = 0; k < support.size();) {
      std::vector<int> trial = support;
      trial.erase(trial.begin() + k);
      ScheduleOutcome re = min_makespan_of(ctx.instance, facility_id, trial);
      if (re.status == ScheduleStatus::Optimal && re.value == target) {
        support = std::move(trial);
        changed = true;
      } else {
        ++k;
      }
    }
  }
  return support;
}

std::vector<int> strengthen_support_infeasible(const Instance& instance, int facility_id,
                                               const std::vector<int>& job_ids,
                                               bool multi_pass) {
  std::vector<int> support = job_ids;
  bool changed = true;
  bool first_pass = true;
  while (changed && (first_pass || multi_pass)) {
    changed = false;
    first_pass = false;
    for (size_t k = 0; k < support.size();) {
      std::vector<int> trial = support;
      trial.erase(trial.begin() + k);
      if (feasibility_of(instance, facility_id, trial).status == ScheduleStatus::Infeasible) {
        support = std::move(trial);
        changed = true;
      } else {
        ++k;
      }
    }
  }
  return support;
}

LinearCut nogood_makespan_cut(int facility_id, const std::vector<int>& support, int makespan) {
  LinearCut cut;
  cut.tag = CutTag::NogoodMakespan;
  cut.coeffs[VarKey::mvar(facility_id)] = Rat(1);
  for (int jid : support) cut.coeffs[VarKey::x(facility_id, jid)] = Rat(-makespan);
  cut.rhs = Rat(makespan) * Rat(1 - static_cast<long long>(support.size()));
  return cut;
}

LinearCut analytic_makespan_cut_deadlines(const Instance& instance, int facility_id,
                                          const std::vector<int>& support, int makespan) {
  if (!releases_all_zero(instance, support))
    throw std::invalid_argument("deadline-form analytic cut requires all-zero release times");
  LinearCut cut;
  cut.tag = CutTag::AnalyticDeadline;
  cut.coeffs[VarKey::mvar(facility_id)] = Rat(1);
  int fp = instance.facility_pos(facility_id);
  long long total_p = 0;
  int dmax = 0, dmin = 0;
  bool first = true;
  for (int jid : support) {
    const Job& j = instance.job(jid);
    cut.coeffs[VarKey::x(facility_id, jid)] = Rat(-j.proc[fp]);
    total_p += j.proc[fp];
    dmax = first ? j.due : std::max(dmax, j.due);
    dmin = first ? j.due : std::min(dmin, j.due);
    first = false;
  }
  cut.rhs = Rat(makespan - total_p - (dmax - dmin));
  return cut;
}

LinearCut analytic_makespan_cut_releases(const Instance& instance, int facility_id,
                                         const std::vector<int>& support, int makespan) {
  if (!deadlines_nonbinding(instance, facility_id, support))
    throw std::invalid_argument("release-form analytic cut requires non-binding deadlines");
  LinearCut cut;
  cut.tag = CutTag::AnalyticRelease;
  cut.coeffs[VarKey::mvar(facility_id)] = Rat(1);
  int fp = instance.facility_pos(facility_id);
  long long total_p = 0;
  int rmax = 0, rmin = 0;
  bool first = true;
  for (int jid : support) {
    const Job& j = instance.job(jid);
    cut.coeffs[VarKey::x(facility_id, jid)] = Rat(-j.proc[fp]);
    total_p += j.proc[fp];
    rmax = first ? j.release : std::max(rmax, j.release);
    rmin = first ? j.release : std::min(rmin, j.release);
    first = false;
  }
  cut.rhs = Rat(makespan - total_p - (rmax - rmin));
  return cut;
}

LinearCut feasibility_nogood_cut(int facility_id, const std::vector<int>& support) {
  LinearCut cut;
  cut.tag = CutTag::FeasibilityNogood;
  for (int jid : support) cut.coeffs[VarKey::x(facility_id, jid)] = Rat(-1);
  cut.rhs = Rat(1 - static_cast<long long>(support.size()));
  return cut;
}

std::vector<LinearCut> tardiness_nogood_cuts(const CutContext& ctx, int facility_id) {
  const ScheduleOutcome& outcome = ctx.outcomes.at(facility_id);
  if (outcome.status != ScheduleStatus::Optimal)
    throw std::logic_error("tardiness cuts requested for an unsolved facility");
  std::vector<int> jobs = ctx.assignment.jobs_on(facility_id);
  const int full_value = outcome.value;

  // Jobs whose individual removal leaves the optimal tardiness unchanged.
  std::vector<int> kept;
  for (int jid : jobs) {
    std::vector<int> trial;
    for (int o : jobs)
      if (o != jid) trial.push_back(o);
    ScheduleOutcome re = min_tardiness_of(ctx.instance, facility_id, trial);
    if (re.value != full_value) kept.push_back(jid);
  }
  ScheduleOutcome reduced = min_tardiness_of(ctx.instance, facility_id, kept);

  auto build = [&](const std::vector<int>& set, int value) {
    LinearCut cut;
    cut.tag = CutTag::NogoodTardiness;
    cut.coeffs[VarKey::tvar(facility_id)] = Rat(1);
    for (int jid : set) cut.coeffs[VarKey::x(facility_id, jid)] = Rat(-value);
    cut.rhs = Rat(value) * Rat(1 - static_cast<long long>(set.size()));
    return cut;
  };
  return {build(kept, reduced.value), build(jobs, full_value)};
}

std::optional<LinearCut> analytic_tardiness_cut(const CutContext& ctx, int facility_id) {
  std::vector<int> jobs = ctx.assignment.jobs_on(facility_id);
  if (jobs.empty()) return std::nullopt;
  if (!disjunctive_facility(ctx.instance, facility_id, jobs)) return std::nullopt;
  if (!releases_all_zero(ctx.instance, jobs)) return std::nullopt;

  ScheduleOutcome free_makespan = min_makespan_free(ctx.instance, facility_id, jobs);
  if (free_makespan.status != ScheduleStatus::Optimal) return std::nullopt;

  LinearCut cut;
  cut.tag = CutTag::AnalyticTardiness;
  cut.coeffs[VarKey::tvar(facility_id)] = Rat(1);
  int fp = ctx.instance.facility_pos(facility_id);
  long long total_p = 0;
  int dmax = 0;
  bool first = true;
  for (int jid : jobs) {
    const Job& j = ctx.instance.job(jid);
    cut.coeffs[VarKey::x(facility_id, jid)] = Rat(-j.proc[fp]);
    total_p += j.proc[fp];
    dmax = first ? j.due : std::max(dmax, j.due);
    first = false;
  }
  cut.rhs = Rat(free_makespan.value - total_p - dmax);
  return cut;
}

}  // namespace lbbd
