#include "lbbd/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace lbbd {

namespace {

constexpr double kIntegralityTol = 1e-6;
constexpr double kPruneTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Jobs in ascending (due, id) order; positions index the That variables.
std::vector<int> due_order(const Instance& instance) {
  std::vector<int> ids;
  for (const Job& j : instance.jobs) ids.push_back(j.id);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const Job& ja = instance.job(a);
    const Job& jb = instance.job(b);
    if (ja.due != jb.due) return ja.due < jb.due;
    return ja.id < jb.id;
  });
  return ids;
}

}  // namespace

MasterModel build_master(const Instance& instance, Objective objective) {
  MasterModel model;
  model.instance = instance;
  model.instance.objective = objective;
  model.objective = objective;

  const int horizon = instance.horizon;
  const int n = static_cast<int>(instance.jobs.size());

  auto add_col = [&](const VarKey& key, double lo, double hi, double obj) {
    model.col_of[key] = static_cast<int>(model.cols.size());
    model.cols.push_back({key, lo, hi, obj});
  };

  for (const Facility& f : instance.facilities) {
    for (const Job& j : instance.jobs) {
      bool open = model.instance.assignable(f.id, j.id);
      double obj = objective == Objective::AssignCost
                       ? static_cast<double>(j.cost[instance.facility_pos(f.id)])
                       : 0.0;
      add_col(VarKey::x(f.id, j.id), 0.0, open ? 1.0 : 0.0, obj);
    }
  }
  if (objective == Objective::Makespan) {
    for (const Facility& f : instance.facilities)
      add_col(VarKey::mvar(f.id), 0.0, horizon, 0.0);
    add_col(VarKey::z(), 0.0, horizon, 1.0);
  } else if (objective == Objective::TotalTardiness) {
    for (const Facility& f : instance.facilities)
      add_col(VarKey::tvar(f.id), 0.0, static_cast<double>(n) * horizon, 1.0);
    for (const Facility& f : instance.facilities)
      for (int k = 1; k <= n; ++k)
        add_col(VarKey::that(f.id, k), 0.0, static_cast<double>(n) * horizon, 0.0);
  }

  for (const Job& j : instance.jobs) {
    lp::Row row;
    bool any_open = false;
    for (const Facility& f : instance.facilities) {
      row.terms.push_back({model.col_of.at(VarKey::x(f.id, j.id)), 1.0});
      any_open = any_open || model.instance.assignable(f.id, j.id);
    }
    row.sense = '=';
    row.rhs = 1.0;
    model.base_rows.push_back(row);
    if (!any_open && !model.infeasible_job) model.infeasible_job = j.id;
  }

  if (objective == Objective::Makespan) {
    for (const Facility& f : instance.facilities) {
      lp::Row row;
      row.terms.push_back({model.col_of.at(VarKey::z()), 1.0});
      row.terms.push_back({model.col_of.at(VarKey::mvar(f.id)), -1.0});
      row.sense = '>';
      row.rhs = 0.0;
      model.base_rows.push_back(row);
    }
  }
  return model;
}

void add_cut(MasterModel& model, const LinearCut& cut) {
  for (const auto& [key, coeff] : cut.coeffs)
    if (!model.has_var(key))
      throw std::invalid_argument("cut names unknown master variable " + to_string(key));
  model.cut_pool.push_back(cut);
}

namespace {

lp::Problem to_lp(const MasterModel& model, const std::map<int, double>& fixed) {
  lp::Problem p;
  p.num_cols = static_cast<int>(model.cols.size());
  for (const auto& col : model.cols) {
    p.objective.push_back(col.obj);
    p.lower.push_back(col.lower);
    p.upper.push_back(col.upper);
  }
  for (const auto& [c, v] : fixed) {
    p.lower[c] = v;
    p.upper[c] = v;
  }
  p.rows = model.base_rows;
  for (const LinearCut& cut : model.cut_pool) {
    lp::Row row;
    for (const auto& [key, coeff] : cut.coeffs)
      row.terms.push_back({model.col_of.at(key), coeff.to_double()});
    row.sense = '>';
    row.rhs = cut.rhs.to_double();
    p.rows.push_back(row);
  }
  return p;
}

Assignment extract_assignment(const MasterModel& model, const std::vector<double>& x) {
  Assignment a;
  for (const auto& col : model.cols) {
    if (col.key.kind != VarKind::X) continue;
    if (x[model.col_of.at(col.key)] > 0.5) a.facility_of[col.key.j] = col.key.i;
  }
  return a;
}

std::map<VarKey, double> extract_values(const MasterModel& model, const std::vector<double>& x) {
  std::map<VarKey, double> vals;
  for (const auto& col : model.cols) vals[col.key] = x[model.col_of.at(col.key)];
  return vals;
}

struct Node {
  double bound = -kInf;
  long long id = 0;
  std::map<int, double> fixed;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;
  }
};

}  // namespace

lp::Solution solve_relaxation(const MasterModel& model) {
  return lp::solve(to_lp(model, {}));
}

MasterSolution solve_master(MasterModel& model, const NodeCallback& on_integer_node,
                            const StopCheck& should_stop) {
  MasterSolution result;
  if (model.infeasible_job) {
    result.status = MasterSolution::Status::Infeasible;
    return result;
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long long next_id = 0;
  open.push({-kInf, next_id++, {}});

  bool have_incumbent = false;
  double inc_value = kInf;
  std::vector<double> inc_x;
  double lower_bound = -kInf;

  while (!open.empty()) {
    if (should_stop && should_stop()) {
      result.status = MasterSolution::Status::Stopped;
      break;
    }
    Node node = open.top();
    open.pop();
    if (have_incumbent && node.bound >= inc_value - kPruneTol) {
      lower_bound = inc_value;
      break;
    }
    lp::Solution sol = lp::solve(to_lp(model, node.fixed));
    ++result.nodes;
    if (sol.status != lp::LpStatus::Optimal) continue;
    if (have_incumbent && sol.value >= inc_value - kPruneTol) continue;
    lower_bound = std::max(lower_bound, std::min(sol.value, open.empty() ? sol.value : open.top().bound));

    // Most fractional assignment variable, ties by column order.
    int branch_col = -1;
    double best_frac = kIntegralityTol;
    for (const auto& col : model.cols) {
      if (col.key.kind != VarKind::X) continue;
      int c = model.col_of.at(col.key);
      double v = sol.x[c];
      double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch_col = c;
      }
    }

    if (branch_col < 0) {
      // Integral in X.
      if (on_integer_node) {
        Assignment a = extract_assignment(model, sol.x);
        auto values = extract_values(model, sol.x);
        double global_lb = std::min(sol.value, open.empty() ? sol.value : open.top().bound);
        IntegerNode ctx{a, values, sol.value, global_lb};
        std::vector<LinearCut> cuts = on_integer_node(ctx);
        if (!cuts.empty()) {
          for (const LinearCut& c : cuts) add_cut(model, c);
          node.bound = sol.value;
          node.id = next_id++;
          open.push(node);
          continue;
        }
      }
      if (sol.value < inc_value) {
        have_incumbent = true;
        inc_value = sol.value;
        inc_x = sol.x;
      }
      continue;
    }

    for (double v : {0.0, 1.0}) {
      Node child;
      child.bound = sol.value;
      child.id = next_id++;
      child.fixed = node.fixed;
      child.fixed[branch_col] = v;
      open.push(child);
    }
  }

  if (result.status == MasterSolution::Status::Stopped) {
    result.lower_bound = lower_bound;
    if (have_incumbent) {
      result.objective = inc_value;
      result.assignment = extract_assignment(model, inc_x);
      result.values = extract_values(model, inc_x);
    }
    return result;
  }
  if (!have_incumbent) {
    result.status = MasterSolution::Status::Infeasible;
    return result;
  }
  result.status = MasterSolution::Status::Optimal;
  result.objective = inc_value;
  result.lower_bound = inc_value;
  result.assignment = extract_assignment(model, inc_x);
  result.values = extract_values(model, inc_x);
  return result;
}

Rat exact_objective_at(const MasterModel& model, const Assignment& assignment) {
  // Replays the pool: minimal feasible value of each bound variable given
  // the integral assignment, in dependency order That -> Tvar/Mvar -> Z.
  auto x_of = [&](const VarKey& k) { return x_value(assignment, k); };

  std::map<VarKey, Rat> that_min;
  for (const auto& col : model.cols)
    if (col.key.kind == VarKind::That) that_min[col.key] = Rat(0);

  for (const LinearCut& cut : model.cut_pool) {
    auto aux = aux_keys(cut);
    if (aux.size() == 1 && aux[0].kind == VarKind::That) {
      Rat bound = cut.rhs;
      for (const auto& [key, coeff] : cut.coeffs)
        if (key.kind == VarKind::X) bound -= coeff * x_of(key);
      that_min[aux[0]] = max(that_min[aux[0]], bound);
    }
  }

  std::map<VarKey, Rat> var_min;
  for (const auto& col : model.cols)
    if (col.key.kind == VarKind::Mvar || col.key.kind == VarKind::Tvar)
      var_min[col.key] = Rat(0);

  for (const LinearCut& cut : model.cut_pool) {
    auto aux = aux_keys(cut);
    if (aux.empty()) {
      // Pure assignment cut: the master solution must satisfy it.
      Rat lhs(0);
      for (const auto& [key, coeff] : cut.coeffs) lhs += coeff * x_of(key);
      if (lhs < cut.rhs) throw std::logic_error("assignment violates a pool cut");
      continue;
    }
    VarKey target{};
    bool found_target = false;
    for (const VarKey& k : aux)
      if (k.kind == VarKind::Mvar || k.kind == VarKind::Tvar) {
        target = k;
        found_target = true;
      }
    if (!found_target) continue;  // That row, handled above
    if (cut.coeffs.at(target) != Rat(1))
      throw std::logic_error("unsupported cut shape in exact replay");
    Rat bound = cut.rhs;
    for (const auto& [key, coeff] : cut.coeffs) {
      if (key == target) continue;
      if (key.kind == VarKind::X)
        bound -= coeff * x_of(key);
      else if (key.kind == VarKind::That)
        bound -= coeff * that_min.at(key);
      else
        throw std::logic_error("unsupported cut shape in exact replay");
    }
    var_min[target] = max(var_min[target], bound);
  }

  switch (model.objective) {
    case Objective::AssignCost: {
      Rat total(0);
      for (const auto& [jid, fid] : assignment.facility_of)
        total += Rat(model.instance.job(jid).cost[model.instance.facility_pos(fid)]);
      return total;
    }
    case Objective::Makespan: {
      Rat z(0);
      for (const auto& [key, v] : var_min)
        if (key.kind == VarKind::Mvar) z = max(z, v);
      return z;
    }
    case Objective::TotalTardiness: {
      Rat total(0);
      for (const auto& [key, v] : var_min)
        if (key.kind == VarKind::Tvar) total += v;
      return total;
    }
  }
  throw std::logic_error("unknown objective");
}

std::string dump_lp(const MasterModel& model) {
  std::ostringstream os;
  os << "Minimize\n obj:";
  bool first = true;
  for (const auto& col : model.cols) {
    if (col.obj == 0.0) continue;
    os << (first ? " " : " + ") << col.obj << " " << to_string(col.key);
    first = false;
  }
  if (first) os << " 0";
  os << "\nSubject To\n";
  int r = 0;
  auto write_row = [&](const lp::Row& row) {
    os << " r" << r++ << ":";
    for (const auto& [c, a] : row.terms) {
      os << (a >= 0 ? " + " : " - ") << std::abs(a) << " " << to_string(model.cols[c].key);
    }
    os << (row.sense == '<' ? " <= " : row.sense == '>' ? " >= " : " = ") << row.rhs << "\n";
  };
  for (const lp::Row& row : model.base_rows) write_row(row);
  for (const LinearCut& cut : model.cut_pool) {
    lp::Row row;
    for (const auto& [key, coeff] : cut.coeffs)
      row.terms.push_back({model.col_of.at(key), coeff.to_double()});
    row.sense = '>';
    row.rhs = cut.rhs.to_double();
    write_row(row);
  }
  os << "Bounds\n";
  for (const auto& col : model.cols)
    os << " " << col.lower << " <= " << to_string(col.key) << " <= " << col.upper << "\n";
  os << "End\n";
  return os.str();
}

}  // namespace lbbd
