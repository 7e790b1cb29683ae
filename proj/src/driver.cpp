#include "lbbd/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

#include "lbbd/cumulative.hpp"
#include "lbbd/cuts.hpp"
#include "lbbd/relax.hpp"

namespace lbbd {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::vector<int> sorted_facility_ids(const Instance& instance) {
  std::vector<int> ids;
  for (const Facility& f : instance.facilities) ids.push_back(f.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void require_valid(const Instance& instance) {
  auto diags = validate(instance);
  if (has_errors(diags)) {
    for (const Diagnostic& d : diags)
      if (d.severity == Diagnostic::Severity::Error)
        throw std::invalid_argument("invalid instance: " + d.message);
  }
}

struct FacilityCuts {
  std::vector<LinearCut> cuts;
  int analytic_skipped = 0;
};

// All Benders cuts for one facility after its subproblem was solved.
// Optimization objectives only; an infeasible facility always contributes a
// feasibility cut regardless of the nogood flag.
FacilityCuts optimality_cuts_for(const Instance& instance, const Assignment& assignment,
                                 const std::map<int, ScheduleOutcome>& outcomes, int facility_id,
                                 const SolverConfig& config) {
  FacilityCuts out;
  std::vector<int> jobs = assignment.jobs_on(facility_id);
  if (jobs.empty()) return out;
  const ScheduleOutcome& outcome = outcomes.at(facility_id);
  CutContext ctx{instance, assignment, outcomes, config.multi_pass_strengthening};

  if (instance.objective == Objective::Makespan) {
    if (outcome.status == ScheduleStatus::Infeasible) {
      out.cuts.push_back(feasibility_nogood_cut(
          facility_id, strengthen_support_infeasible(instance, facility_id, jobs,
                                                     config.multi_pass_strengthening)));
      return out;
    }
    if (!config.nogood_cuts && !config.analytic_cuts) return out;
    std::vector<int> support = strengthen_support_makespan(ctx, facility_id);
    if (config.nogood_cuts)
      out.cuts.push_back(nogood_makespan_cut(facility_id, support, outcome.value));
    if (config.analytic_cuts) {
      if (deadlines_nonbinding(instance, facility_id, support))
        out.cuts.push_back(
            analytic_makespan_cut_releases(instance, facility_id, support, outcome.value));
      else if (releases_all_zero(instance, support))
        out.cuts.push_back(
            analytic_makespan_cut_deadlines(instance, facility_id, support, outcome.value));
      else
        ++out.analytic_skipped;
    }
    return out;
  }

  if (config.nogood_cuts) {
    std::vector<LinearCut> pair = tardiness_nogood_cuts(ctx, facility_id);
    out.cuts.insert(out.cuts.end(), pair.begin(), pair.end());
  }
  if (config.analytic_cuts) {
    std::optional<LinearCut> cut = analytic_tardiness_cut(ctx, facility_id);
    if (cut)
      out.cuts.push_back(*cut);
    else
      ++out.analytic_skipped;
  }
  return out;
}

SubObjective sub_objective_of(Objective obj) {
  switch (obj) {
    case Objective::Makespan: return SubObjective::Makespan;
    case Objective::AssignCost: return SubObjective::Feasibility;
    case Objective::TotalTardiness: return SubObjective::Tardiness;
  }
  throw std::logic_error("unknown objective");
}

std::optional<Rat> aggregate_value(Objective obj, const Instance& instance,
                                   const Assignment& assignment,
                                   const std::map<int, ScheduleOutcome>& outcomes) {
  Rat total(0);
  for (const auto& [fid, outcome] : outcomes) {
    if (outcome.status == ScheduleStatus::Infeasible) return std::nullopt;
    if (obj == Objective::Makespan)
      total = max(total, Rat(outcome.value));
    else if (obj == Objective::TotalTardiness)
      total += Rat(outcome.value);
  }
  if (obj == Objective::AssignCost) {
    total = Rat(0);
    for (const auto& [jid, fid] : assignment.facility_of)
      total += Rat(instance.job(jid).cost[instance.facility_pos(fid)]);
  }
  return total;
}

struct WarmStartPlan {
  std::vector<Assignment> assignments;
};

WarmStartPlan warm_assignments(const Instance& instance, const SolverConfig& config) {
  WarmStartPlan plan;
  if (config.warm_start_count <= 0) return plan;

  // Per job, assignable facilities ordered cheapest-first: assignment cost
  // under AssignCost, processing time otherwise, ties by facility id.
  std::map<int, std::vector<int>> prefs;
  for (const Job& j : instance.jobs) {
    std::vector<int> fids;
    for (const Facility& f : instance.facilities)
      if (instance.assignable(f.id, j.id)) fids.push_back(f.id);
    if (fids.empty()) return plan;  // build-time infeasibility handles this
    std::sort(fids.begin(), fids.end(), [&](int a, int b) {
      int pa = instance.facility_pos(a), pb = instance.facility_pos(b);
      int ka = instance.objective == Objective::AssignCost ? j.cost[pa] : j.proc[pa];
      int kb = instance.objective == Objective::AssignCost ? j.cost[pb] : j.proc[pb];
      if (ka != kb) return ka < kb;
      return a < b;
    });
    prefs[j.id] = fids;
  }

  std::set<Assignment> seen;
  for (int t = 0; t < config.warm_start_count; ++t) {
    Assignment a;
    for (const Job& j : instance.jobs) {
      const std::vector<int>& p = prefs.at(j.id);
      a.facility_of[j.id] = p[t % p.size()];
    }
    if (seen.insert(a).second) plan.assignments.push_back(a);
  }
  return plan;
}

std::map<int, ScheduleOutcome> solve_all_subproblems(const Instance& instance,
                                                     const Assignment& assignment,
                                                     SubObjective sub_obj) {
  std::map<int, ScheduleOutcome> outcomes;
  for (int fid : sorted_facility_ids(instance))
    outcomes[fid] =
        solve_subproblem(make_subproblem(instance, fid, assignment.jobs_on(fid), sub_obj));
  return outcomes;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

int LbbdResult::sub_iterations() const {
  int n = 0;
  for (const IterationRecord& r : trace.iterations)
    if (r.subproblem_solved) ++n;
  return n;
}

std::vector<LinearCut> warm_start(const Instance& instance, const SolverConfig& config) {
  std::vector<LinearCut> out;
  SubObjective sub_obj = sub_objective_of(instance.objective);
  for (const Assignment& a : warm_assignments(instance, config).assignments) {
    std::map<int, ScheduleOutcome> outcomes = solve_all_subproblems(instance, a, sub_obj);
    for (int fid : sorted_facility_ids(instance)) {
      std::vector<int> jobs = a.jobs_on(fid);
      if (jobs.empty()) continue;
      if (instance.objective == Objective::AssignCost) {
        if (outcomes.at(fid).status == ScheduleStatus::Infeasible)
          out.push_back(feasibility_nogood_cut(
              fid, strengthen_support_infeasible(instance, fid, jobs,
                                                 config.multi_pass_strengthening)));
      } else {
        FacilityCuts fc = optimality_cuts_for(instance, a, outcomes, fid, config);
        out.insert(out.end(), fc.cuts.begin(), fc.cuts.end());
      }
    }
  }
  return out;
}

namespace {

LbbdResult run_iterative(const Instance& instance, const SolverConfig& config) {
  require_valid(instance);
  const bool feasibility_mode = instance.objective == Objective::AssignCost;
  const SubObjective sub_obj = sub_objective_of(instance.objective);
  const Clock::time_point t0 = Clock::now();

  LbbdResult res;
  MasterModel model = build_master(instance, instance.objective);
  if (model.infeasible_job) {
    res.status = SolveStatus::Infeasible;
    res.total_ms = ms_since(t0);
    return res;
  }

  if (config.relaxations)
    for (const LinearCut& cut : relaxation_cuts(instance)) {
      add_cut(model, cut);
      ++res.trace.relax_cuts[cut.tag];
    }
  for (const LinearCut& cut : warm_start(instance, config)) {
    add_cut(model, cut);
    ++res.trace.warm_cuts[cut.tag];
  }

  std::optional<Rat> v_min;
  Assignment best_assignment;
  std::map<int, ScheduleOutcome> best_outcomes;
  Rat last_z(0);

  for (int k = 1;; ++k) {
    Clock::time_point iter0 = Clock::now();
    Clock::time_point master0 = Clock::now();
    MasterSolution ms = solve_master(model);
    res.master_ms += ms_since(master0);
    if (ms.status == MasterSolution::Status::Infeasible) {
      res.status = SolveStatus::Infeasible;
      res.lower = last_z;
      res.upper = v_min;
      break;
    }
    Rat z = exact_objective_at(model, ms.assignment);
    last_z = z;

    if (!feasibility_mode && v_min && z == *v_min) {
      IterationRecord rec;
      rec.k = k;
      rec.z = z;
      rec.v_min = v_min;
      rec.ms = ms_since(iter0);
      res.trace.iterations.push_back(rec);
      res.status = SolveStatus::Optimal;
      res.value = v_min;
      res.lower = z;
      res.upper = v_min;
      res.assignment = best_assignment;
      res.schedules = best_outcomes;
      break;
    }

    Clock::time_point sub0 = Clock::now();
    std::map<int, ScheduleOutcome> outcomes =
        solve_all_subproblems(instance, ms.assignment, sub_obj);
    res.subproblem_ms += ms_since(sub0);
    std::optional<Rat> v = aggregate_value(instance.objective, instance, ms.assignment, outcomes);

    IterationRecord rec;
    rec.k = k;
    rec.z = z;
    rec.subproblem_solved = true;
    rec.v = v;

    if (feasibility_mode && v) {
      // Every facility admits a schedule: the master optimum is the answer.
      v_min = v;
      rec.v_min = v_min;
      rec.ms = ms_since(iter0);
      res.trace.iterations.push_back(rec);
      res.status = SolveStatus::Optimal;
      res.value = v;
      res.lower = z;
      res.upper = v;
      res.assignment = ms.assignment;
      res.schedules = outcomes;
      break;
    }
    if (v && (!v_min || *v < *v_min)) {
      v_min = v;
      best_assignment = ms.assignment;
      best_outcomes = outcomes;
    }
    rec.v_min = v_min;

    for (int fid : sorted_facility_ids(instance)) {
      std::vector<int> jobs = ms.assignment.jobs_on(fid);
      if (jobs.empty()) continue;
      if (feasibility_mode) {
        if (outcomes.at(fid).status == ScheduleStatus::Infeasible) {
          LinearCut cut = feasibility_nogood_cut(
              fid, strengthen_support_infeasible(instance, fid, jobs,
                                                 config.multi_pass_strengthening));
          add_cut(model, cut);
          ++rec.cuts_added[cut.tag];
        }
      } else {
        FacilityCuts fc = optimality_cuts_for(instance, ms.assignment, outcomes, fid, config);
        rec.analytic_skipped += fc.analytic_skipped;
        for (const LinearCut& cut : fc.cuts) {
          add_cut(model, cut);
          ++rec.cuts_added[cut.tag];
        }
      }
    }

    rec.ms = ms_since(iter0);
    res.trace.iterations.push_back(rec);

    if (k >= config.iteration_budget || ms_since(t0) >= config.time_budget_s * 1000.0) {
      res.status = SolveStatus::BudgetExhausted;
      res.lower = z;
      res.upper = v_min;
      res.assignment = best_assignment;
      res.schedules = best_outcomes;
      break;
    }
  }
  res.total_ms = ms_since(t0);
  return res;
}

}  // namespace

LbbdResult solve_lbbd(const Instance& instance, const SolverConfig& config) {
  if (instance.objective == Objective::AssignCost)
    throw std::invalid_argument("solve_lbbd expects an optimization subproblem objective");
  return run_iterative(instance, config);
}

LbbdResult solve_lbbd_feasibility(const Instance& instance, const SolverConfig& config) {
  if (instance.objective != Objective::AssignCost)
    throw std::invalid_argument("solve_lbbd_feasibility expects the cost objective");
  return run_iterative(instance, config);
}

LbbdResult solve_branch_and_check(const Instance& instance, const SolverConfig& config) {
  require_valid(instance);
  const bool feasibility_mode = instance.objective == Objective::AssignCost;
  const SubObjective sub_obj = sub_objective_of(instance.objective);
  const Clock::time_point t0 = Clock::now();

  LbbdResult res;
  MasterModel model = build_master(instance, instance.objective);
  if (model.infeasible_job) {
    res.status = SolveStatus::Infeasible;
    res.total_ms = ms_since(t0);
    return res;
  }
  if (config.relaxations)
    for (const LinearCut& cut : relaxation_cuts(instance)) {
      add_cut(model, cut);
      ++res.trace.relax_cuts[cut.tag];
    }
  for (const LinearCut& cut : warm_start(instance, config)) {
    add_cut(model, cut);
    ++res.trace.warm_cuts[cut.tag];
  }

  std::optional<Rat> v_min;
  Assignment best_assignment;
  std::map<int, ScheduleOutcome> best_outcomes;
  std::map<std::pair<int, std::vector<int>>, ScheduleOutcome> outcome_cache;
  std::map<std::pair<int, std::vector<int>>, FacilityCuts> family_cache;
  int callbacks = 0;

  auto outcome_of = [&](int fid, const std::vector<int>& jobs) -> const ScheduleOutcome& {
    auto key = std::make_pair(fid, jobs);
    auto it = outcome_cache.find(key);
    if (it == outcome_cache.end())
      it = outcome_cache
               .emplace(key, solve_subproblem(make_subproblem(instance, fid, jobs, sub_obj)))
               .first;
    return it->second;
  };

  NodeCallback callback = [&](const IntegerNode& node) -> std::vector<LinearCut> {
    ++callbacks;
    IterationRecord rec;
    rec.k = callbacks;
    rec.z = Rat(0);
    rec.subproblem_solved = true;

    std::map<int, ScheduleOutcome> outcomes;
    for (int fid : sorted_facility_ids(instance))
      outcomes[fid] = outcome_of(fid, node.assignment.jobs_on(fid));
    std::optional<Rat> v =
        aggregate_value(instance.objective, instance, node.assignment, outcomes);
    rec.v = v;
    if (v && (!v_min || *v < *v_min)) {
      v_min = v;
      best_assignment = node.assignment;
      best_outcomes = outcomes;
    }
    rec.v_min = v_min;

    std::vector<LinearCut> violated;
    for (int fid : sorted_facility_ids(instance)) {
      std::vector<int> jobs = node.assignment.jobs_on(fid);
      if (jobs.empty()) continue;
      auto key = std::make_pair(fid, jobs);
      auto it = family_cache.find(key);
      if (it == family_cache.end()) {
        FacilityCuts fc;
        if (feasibility_mode) {
          if (outcomes.at(fid).status == ScheduleStatus::Infeasible)
            fc.cuts.push_back(feasibility_nogood_cut(
                fid, strengthen_support_infeasible(instance, fid, jobs,
                                                   config.multi_pass_strengthening)));
        } else {
          fc = optimality_cuts_for(instance, node.assignment, outcomes, fid, config);
        }
        it = family_cache.emplace(key, std::move(fc)).first;
      }
      rec.analytic_skipped += it->second.analytic_skipped;
      for (const LinearCut& cut : it->second.cuts) {
        bool is_violated = false;
        auto aux = aux_keys(cut);
        if (aux.empty()) {
          Rat lhs(0);
          for (const auto& [ck, coeff] : cut.coeffs)
            lhs += coeff * x_value(node.assignment, ck);
          is_violated = lhs < cut.rhs;
        } else {
          Rat bound = cut_bound_at(cut, node.assignment);
          is_violated = bound.to_double() > node.values.at(aux[0]) + 1e-6;
        }
        if (is_violated) {
          violated.push_back(cut);
          ++rec.cuts_added[cut.tag];
        }
      }
    }
    res.trace.iterations.push_back(rec);
    return violated;
  };

  StopCheck should_stop = [&]() {
    return callbacks > config.iteration_budget || ms_since(t0) >= config.time_budget_s * 1000.0;
  };

  Clock::time_point master0 = Clock::now();
  MasterSolution ms = solve_master(model, callback, should_stop);
  res.master_ms = ms_since(master0);

  if (ms.status == MasterSolution::Status::Infeasible) {
    res.status = SolveStatus::Infeasible;
    res.upper = v_min;
  } else if (ms.status == MasterSolution::Status::Stopped) {
    res.status = SolveStatus::BudgetExhausted;
    res.lower = Rat(0);
    res.upper = v_min;
    res.assignment = best_assignment;
    res.schedules = best_outcomes;
  } else {
    Rat value = exact_objective_at(model, ms.assignment);
    IterationRecord rec;
    rec.k = callbacks + 1;
    rec.z = value;
    rec.v_min = value;
    res.trace.iterations.push_back(rec);
    res.status = SolveStatus::Optimal;
    res.value = value;
    res.lower = value;
    res.upper = value;
    res.assignment = ms.assignment;
    std::map<int, ScheduleOutcome> outcomes;
    for (int fid : sorted_facility_ids(instance))
      outcomes[fid] = outcome_of(fid, ms.assignment.jobs_on(fid));
    res.schedules = outcomes;
  }
  res.total_ms = ms_since(t0);
  return res;
}

LbbdResult solve(const Instance& instance, const SolverConfig& config) {
  if (config.mode == SolveMode::BranchAndCheck) return solve_branch_and_check(instance, config);
  if (instance.objective == Objective::AssignCost)
    return solve_lbbd_feasibility(instance, config);
  return solve_lbbd(instance, config);
}

void write_trace(const SolveTrace& trace, std::ostream& os) {
  for (const IterationRecord& r : trace.iterations) {
    os << r.k << " " << r.z.str() << " ";
    if (!r.subproblem_solved)
      os << "-";
    else if (r.v)
      os << r.v->str();
    else
      os << "inf";
    os << " " << (r.v_min ? r.v_min->str() : "inf") << " cuts=";
    bool first = true;
    for (const auto& [tag, count] : r.cuts_added) {
      if (!first) os << ",";
      os << to_string(tag) << ":" << count;
      first = false;
    }
    os << " ms=" << r.ms << "\n";
  }
}

}  // namespace lbbd
