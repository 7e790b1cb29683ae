#include "lbbd/model.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lbbd {

std::string to_string(Objective o) {
  switch (o) {
    case Objective::Makespan: return "makespan";
    case Objective::AssignCost: return "cost";
    case Objective::TotalTardiness: return "tardiness";
  }
  return "?";
}

std::optional<Objective> objective_from_string(const std::string& s) {
  if (s == "makespan") return Objective::Makespan;
  if (s == "cost") return Objective::AssignCost;
  if (s == "tardiness") return Objective::TotalTardiness;
  return std::nullopt;
}

int Instance::job_pos(int job_id) const {
  for (size_t k = 0; k < jobs.size(); ++k)
    if (jobs[k].id == job_id) return static_cast<int>(k);
  return -1;
}

int Instance::facility_pos(int facility_id) const {
  for (size_t k = 0; k < facilities.size(); ++k)
    if (facilities[k].id == facility_id) return static_cast<int>(k);
  return -1;
}

const Job& Instance::job(int job_id) const {
  int p = job_pos(job_id);
  if (p < 0) throw std::out_of_range("unknown job id " + std::to_string(job_id));
  return jobs[p];
}

const Facility& Instance::facility(int facility_id) const {
  int p = facility_pos(facility_id);
  if (p < 0) throw std::out_of_range("unknown facility id " + std::to_string(facility_id));
  return facilities[p];
}

int Instance::default_horizon() const {
  int max_r = 0;
  int total = 0;
  for (const Job& j : jobs) {
    max_r = std::max(max_r, j.release);
    int pmax = 0;
    for (int p : j.proc) pmax = std::max(pmax, p);
    total += pmax;
  }
  return max_r + total;
}

bool Instance::assignable(int facility_id, int job_id) const {
  const Job& j = job(job_id);
  const Facility& f = facility(facility_id);
  int fp = facility_pos(facility_id);
  if (j.demand[fp] > f.capacity) return false;
  if (objective != Objective::TotalTardiness && j.release + j.proc[fp] > j.due) return false;
  return true;
}

std::vector<int> Assignment::jobs_on(int facility_id) const {
  std::vector<int> out;
  for (const auto& [job_id, fac_id] : facility_of)
    if (fac_id == facility_id) out.push_back(job_id);
  return out;  // map iteration is already ascending by job id
}

std::string to_string(CutTag t) {
  switch (t) {
    case CutTag::NogoodMakespan: return "NogoodMakespan";
    case CutTag::AnalyticDeadline: return "AnalyticDeadline";
    case CutTag::AnalyticRelease: return "AnalyticRelease";
    case CutTag::FeasibilityNogood: return "FeasibilityNogood";
    case CutTag::NogoodTardiness: return "NogoodTardiness";
    case CutTag::AnalyticTardiness: return "AnalyticTardiness";
    case CutTag::RelaxEnergy: return "RelaxEnergy";
    case CutTag::RelaxMakespan: return "RelaxMakespan";
    case CutTag::RelaxTardiness1: return "RelaxTardiness1";
    case CutTag::RelaxTardiness2: return "RelaxTardiness2";
  }
  return "?";
}

std::string to_string(const VarKey& k) {
  switch (k.kind) {
    case VarKind::X: return "X_" + std::to_string(k.i) + "_" + std::to_string(k.j);
    case VarKind::Mvar: return "M_" + std::to_string(k.i);
    case VarKind::Tvar: return "T_" + std::to_string(k.i);
    case VarKind::That: return "That_" + std::to_string(k.i) + "_" + std::to_string(k.j);
    case VarKind::Z: return "Z";
  }
  return "?";
}

std::vector<VarKey> aux_keys(const LinearCut& cut) {
  std::vector<VarKey> out;
  for (const auto& [key, coeff] : cut.coeffs)
    if (key.kind != VarKind::X) out.push_back(key);
  return out;
}

Rat cut_bound_at(const LinearCut& cut, const Assignment& a) {
  auto aux = aux_keys(cut);
  if (aux.size() != 1 || cut.coeffs.at(aux[0]) != Rat(1))
    throw std::logic_error("cut does not bound a single variable");
  Rat bound = cut.rhs;
  for (const auto& [key, coeff] : cut.coeffs) {
    if (key.kind == VarKind::X) bound -= coeff * x_value(a, key);
  }
  return bound;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

std::vector<Diagnostic> validate(const Instance& instance) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string msg) {
    out.push_back({Diagnostic::Severity::Error, std::move(msg)});
  };
  auto note = [&](std::string msg) {
    out.push_back({Diagnostic::Severity::Note, std::move(msg)});
  };

  if (instance.jobs.empty()) error("instance has no jobs");
  if (instance.facilities.empty()) error("instance has no facilities");

  const size_t m = instance.facilities.size();
  for (size_t k = 0; k < m; ++k) {
    const Facility& f = instance.facilities[k];
    if (f.capacity < 1)
      error("facility " + std::to_string(f.id) + " capacity < 1");
    for (size_t k2 = k + 1; k2 < m; ++k2)
      if (instance.facilities[k2].id == f.id)
        error("duplicate facility id " + std::to_string(f.id));
  }

  for (size_t k = 0; k < instance.jobs.size(); ++k) {
    const Job& j = instance.jobs[k];
    for (size_t k2 = k + 1; k2 < instance.jobs.size(); ++k2)
      if (instance.jobs[k2].id == j.id) error("duplicate job id " + std::to_string(j.id));
    if (j.release < 0) error("job " + std::to_string(j.id) + " release < 0");
    if (j.proc.size() != m || j.demand.size() != m || j.cost.size() != m) {
      error("job " + std::to_string(j.id) + " per-facility arrays do not match facility count");
      continue;
    }
    for (size_t f = 0; f < m; ++f) {
      const Facility& fac = instance.facilities[f];
      if (j.proc[f] < 0)
        error("job " + std::to_string(j.id) + " processing time < 0 on facility " +
              std::to_string(fac.id));
      if (j.demand[f] < 0)
        error("job " + std::to_string(j.id) + " demand < 0 on facility " + std::to_string(fac.id));
      if (fac.capacity >= 1 && j.demand[f] > fac.capacity)
        note("job " + std::to_string(j.id) + " unassignable to facility " +
             std::to_string(fac.id) + " (demand exceeds capacity)");
      if (instance.objective != Objective::TotalTardiness && j.proc[f] >= 0 &&
          j.release >= 0 && j.release + j.proc[f] > j.due)
        note("job " + std::to_string(j.id) + " cannot meet its deadline on facility " +
             std::to_string(fac.id));
    }
  }

  bool sizes_ok = std::all_of(instance.jobs.begin(), instance.jobs.end(), [&](const Job& j) {
    return j.proc.size() == m && j.demand.size() == m;
  });
  if (sizes_ok && !instance.jobs.empty() && instance.horizon < instance.default_horizon())
    error("horizon " + std::to_string(instance.horizon) + " below safe bound " +
          std::to_string(instance.default_horizon()));

  return out;
}

namespace {

using nlohmann::json;

// File arrays-by-facility are in ascending facility id order; in-memory
// arrays follow the facilities vector.
std::vector<int> id_order_permutation(const std::vector<Facility>& facilities) {
  std::vector<int> order(facilities.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return facilities[a].id < facilities[b].id; });
  return order;
}

int require_int(const json& obj, const std::string& field, const std::string& where) {
  if (!obj.contains(field))
    throw std::runtime_error("parse error: missing field \"" + field + "\" in " + where);
  if (!obj[field].is_number_integer())
    throw std::runtime_error("parse error: field \"" + field + "\" in " + where +
                             " is not an integer");
  return obj[field].get<int>();
}

std::vector<int> require_int_array(const json& obj, const std::string& field,
                                   const std::string& where, size_t size) {
  if (!obj.contains(field))
    throw std::runtime_error("parse error: missing field \"" + field + "\" in " + where);
  const json& arr = obj[field];
  if (!arr.is_array() || arr.size() != size)
    throw std::runtime_error("parse error: field \"" + field + "\" in " + where +
                             " must be an array of length " + std::to_string(size));
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer())
      throw std::runtime_error("parse error: field \"" + field + "\" in " + where +
                               " has a non-integer entry");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("parse error: ") + e.what());
  }

  Instance inst;
  if (!doc.contains("facilities") || !doc["facilities"].is_array())
    throw std::runtime_error("parse error: missing field \"facilities\"");
  for (const auto& f : doc["facilities"]) {
    Facility fac;
    fac.id = require_int(f, "id", "facilities");
    fac.capacity = require_int(f, "capacity", "facility " + std::to_string(fac.id));
    inst.facilities.push_back(fac);
  }

  const size_t m = inst.facilities.size();
  std::vector<int> order = id_order_permutation(inst.facilities);

  if (!doc.contains("jobs") || !doc["jobs"].is_array())
    throw std::runtime_error("parse error: missing field \"jobs\"");
  for (const auto& jj : doc["jobs"]) {
    Job job;
    job.id = require_int(jj, "id", "jobs");
    const std::string where = "job " + std::to_string(job.id);
    job.release = require_int(jj, "release", where);
    job.due = require_int(jj, "due", where);
    std::vector<int> proc = require_int_array(jj, "proc", where, m);
    std::vector<int> demand = require_int_array(jj, "demand", where, m);
    std::vector<int> cost = require_int_array(jj, "cost", where, m);
    job.proc.resize(m);
    job.demand.resize(m);
    job.cost.resize(m);
    for (size_t k = 0; k < m; ++k) {
      job.proc[order[k]] = proc[k];
      job.demand[order[k]] = demand[k];
      job.cost[order[k]] = cost[k];
    }
    inst.jobs.push_back(job);
  }

  if (!doc.contains("objective") || !doc["objective"].is_string())
    throw std::runtime_error("parse error: missing field \"objective\"");
  auto obj = objective_from_string(doc["objective"].get<std::string>());
  if (!obj)
    throw std::runtime_error("parse error: unknown objective \"" +
                             doc["objective"].get<std::string>() + "\"");
  inst.objective = *obj;

  if (doc.contains("horizon")) {
    if (!doc["horizon"].is_number_integer())
      throw std::runtime_error("parse error: field \"horizon\" is not an integer");
    inst.horizon = doc["horizon"].get<int>();
  } else {
    inst.horizon = inst.default_horizon();
  }
  return inst;
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["facilities"] = json::array();
  for (const Facility& f : instance.facilities)
    doc["facilities"].push_back({{"id", f.id}, {"capacity", f.capacity}});

  std::vector<int> order = id_order_permutation(instance.facilities);
  doc["jobs"] = json::array();
  for (const Job& j : instance.jobs) {
    json jj;
    jj["id"] = j.id;
    jj["release"] = j.release;
    jj["due"] = j.due;
    json proc = json::array(), demand = json::array(), cost = json::array();
    for (size_t k = 0; k < order.size(); ++k) {
      proc.push_back(j.proc[order[k]]);
      demand.push_back(j.demand[order[k]]);
      cost.push_back(j.cost[order[k]]);
    }
    jj["proc"] = proc;
    jj["demand"] = demand;
    jj["cost"] = cost;
    doc["jobs"].push_back(jj);
  }
  doc["objective"] = to_string(instance.objective);
  doc["horizon"] = instance.horizon;
  return doc.dump(2);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instance_to_json(instance) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lbbd
