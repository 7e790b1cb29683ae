#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbbd/rational.hpp"

namespace lbbd {

enum class Objective { Makespan, AssignCost, TotalTardiness };

std::string to_string(Objective o);
std::optional<Objective> objective_from_string(const std::string& s);

// Per-facility job data is stored position-aligned with Instance::facilities.
struct Job {
  int id = 0;
  int release = 0;  // r_j
  int due = 0;      // d_j: hard deadline under Makespan/AssignCost, soft due date under TotalTardiness
  std::vector<int> proc;    // p_{ij}
  std::vector<int> demand;  // c_{ij}
  std::vector<int> cost;    // assignment cost, AssignCost objective only

  bool operator==(const Job&) const = default;
};

struct Facility {
  int id = 0;
  int capacity = 1;  // C_i

  bool operator==(const Facility&) const = default;
};

struct Instance {
  std::vector<Job> jobs;
  std::vector<Facility> facilities;
  Objective objective = Objective::Makespan;
  int horizon = 0;  // upper bound on every start time

  int job_pos(int job_id) const;
  int facility_pos(int facility_id) const;
  const Job& job(int job_id) const;
  const Facility& facility(int facility_id) const;

  // max_j r_j + sum_j max_i p_ij; large enough for any schedule worth considering
  int default_horizon() const;

  // demand fits capacity, and under deadline objectives the window is wide enough
  bool assignable(int facility_id, int job_id) const;

  bool operator==(const Instance&) const = default;
};

// Total map job id -> facility id; encodes a 0/1 assignment with one facility per job.
struct Assignment {
  std::map<int, int> facility_of;

  std::vector<int> jobs_on(int facility_id) const;  // ascending job id
  bool operator==(const Assignment&) const = default;
  bool operator<(const Assignment& o) const { return facility_of < o.facility_of; }
};

enum class ScheduleStatus { Optimal, Infeasible };

struct ScheduleOutcome {
  ScheduleStatus status = ScheduleStatus::Infeasible;
  int value = 0;            // objective value, meaningful when Optimal
  std::map<int, int> starts;  // job id -> start time, present when Optimal
};

// Single-facility subproblem objective. Feasibility asks only for a witness.
enum class SubObjective { Makespan, Feasibility, Tardiness };

enum class CutTag {
  NogoodMakespan,
  AnalyticDeadline,
  AnalyticRelease,
  FeasibilityNogood,
  NogoodTardiness,
  AnalyticTardiness,
  RelaxEnergy,
  RelaxMakespan,
  RelaxTardiness1,
  RelaxTardiness2,
};

std::string to_string(CutTag t);

enum class VarKind { X, Mvar, Tvar, That, Z };

// Master-variable key. i is a facility id; j is a job id for X and a
// 1-based due-date-order index for That.
struct VarKey {
  VarKind kind = VarKind::Z;
  int i = -1;
  int j = -1;

  static VarKey x(int facility_id, int job_id) { return {VarKind::X, facility_id, job_id}; }
  static VarKey mvar(int facility_id) { return {VarKind::Mvar, facility_id, -1}; }
  static VarKey tvar(int facility_id) { return {VarKind::Tvar, facility_id, -1}; }
  static VarKey that(int facility_id, int k) { return {VarKind::That, facility_id, k}; }
  static VarKey z() { return {VarKind::Z, -1, -1}; }

  auto operator<=>(const VarKey&) const = default;
};

std::string to_string(const VarKey& k);  // X_i_j, M_i, T_i, That_i_k, Z

// One linear inequality sum(coeffs) >= rhs over master variables.
struct LinearCut {
  std::map<VarKey, Rat> coeffs;
  Rat rhs;
  CutTag tag = CutTag::NogoodMakespan;
};

// X-variable value under an assignment: 1 iff job j sits on facility i.
inline Rat x_value(const Assignment& a, const VarKey& k) {
  auto it = a.facility_of.find(k.j);
  return (it != a.facility_of.end() && it->second == k.i) ? Rat(1) : Rat(0);
}

// For a cut with exactly one non-X key carrying coefficient 1, the lower
// bound it imposes on that variable at the given assignment.
Rat cut_bound_at(const LinearCut& cut, const Assignment& a);

// Keys other than X in the cut, in key order.
std::vector<VarKey> aux_keys(const LinearCut& cut);

struct Diagnostic {
  enum class Severity { Error, Note };
  Severity severity = Severity::Error;
  std::string message;
};

std::vector<Diagnostic> validate(const Instance& instance);
bool has_errors(const std::vector<Diagnostic>& diags);

// JSON instance files. Arrays-by-facility in the file are ordered by
// ascending facility id regardless of the order of the facilities array.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& instance);
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace lbbd
