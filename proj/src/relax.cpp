#include "lbbd/relax.hpp"

#include <algorithm>
#include <set>

namespace lbbd {

std::vector<int> jobs_in_window(const Instance& instance, int t1, int t2) {
  std::vector<int> out;
  for (const Job& j : instance.jobs)
    if (j.release >= t1 && j.due <= t2) out.push_back(j.id);
  return out;
}

std::vector<WindowPair> candidate_windows(const Instance& instance, int facility_id) {
  int fp = instance.facility_pos(facility_id);
  int capacity = instance.facility(facility_id).capacity;
  std::set<std::pair<int, int>> seen;
  std::vector<WindowPair> out;
  for (const Job& a : instance.jobs) {
    for (const Job& b : instance.jobs) {
      int t1 = a.release, t2 = b.due;
      if (t1 >= t2 || !seen.insert({t1, t2}).second) continue;
      std::vector<int> covered = jobs_in_window(instance, t1, t2);
      if (covered.empty()) continue;
      Rat energy(0);
      for (int jid : covered) {
        const Job& j = instance.job(jid);
        energy += Rat(static_cast<long long>(j.proc[fp]) * j.demand[fp]);
      }
      WindowPair wp;
      wp.facility_id = facility_id;
      wp.t1 = t1;
      wp.t2 = t2;
      wp.tightness = energy / Rat(capacity) - Rat(t2 - t1);
      out.push_back(wp);
    }
  }
  std::sort(out.begin(), out.end(), [](const WindowPair& x, const WindowPair& y) {
    if (x.t1 != y.t1) return x.t1 < y.t1;
    return x.t2 < y.t2;
  });
  return out;
}

std::vector<WindowPair> prune_dominated(std::vector<WindowPair> pairs) {
  // Duplicate intervals collapse first, then strict subintervals prune.
  std::vector<WindowPair> unique;
  for (const WindowPair& p : pairs) {
    bool dup = std::any_of(unique.begin(), unique.end(), [&](const WindowPair& q) {
      return q.facility_id == p.facility_id && q.t1 == p.t1 && q.t2 == p.t2;
    });
    if (!dup) unique.push_back(p);
  }
  std::vector<WindowPair> kept;
  for (const WindowPair& p : unique) {
    bool dominated = std::any_of(unique.begin(), unique.end(), [&](const WindowPair& q) {
      if (q.facility_id != p.facility_id) return false;
      if (q.t1 == p.t1 && q.t2 == p.t2) return false;
      return q.t1 >= p.t1 && q.t2 <= p.t2 && q.tightness >= p.tightness;
    });
    if (!dominated) kept.push_back(p);
  }
  return kept;
}

std::vector<LinearCut> energy_window_inequalities(const Instance& instance) {
  std::vector<LinearCut> out;
  for (const Facility& f : instance.facilities) {
    int fp = instance.facility_pos(f.id);
    for (const WindowPair& wp : prune_dominated(candidate_windows(instance, f.id))) {
      LinearCut cut;
      cut.tag = CutTag::RelaxEnergy;
      for (int jid : jobs_in_window(instance, wp.t1, wp.t2)) {
        const Job& j = instance.job(jid);
        cut.coeffs[VarKey::x(f.id, jid)] =
            Rat(-static_cast<long long>(j.proc[fp]) * j.demand[fp]);
      }
      cut.rhs = Rat(-static_cast<long long>(f.capacity) * (wp.t2 - wp.t1));
      out.push_back(cut);
    }
  }
  return out;
}

std::vector<LinearCut> makespan_relaxation(const Instance& instance) {
  std::vector<LinearCut> out;
  std::set<int> releases;
  for (const Job& j : instance.jobs) releases.insert(j.release);
  for (const Facility& f : instance.facilities) {
    int fp = instance.facility_pos(f.id);
    for (int t : releases) {
      LinearCut cut;
      cut.tag = CutTag::RelaxMakespan;
      cut.coeffs[VarKey::mvar(f.id)] = Rat(1);
      for (const Job& j : instance.jobs) {
        if (j.release < t) continue;
        cut.coeffs[VarKey::x(f.id, j.id)] =
            Rat(-static_cast<long long>(j.proc[fp]) * j.demand[fp], f.capacity);
      }
      cut.rhs = Rat(t);
      out.push_back(cut);
    }
  }
  return out;
}

std::vector<LinearCut> tardiness_relaxation_1(const Instance& instance) {
  std::vector<LinearCut> out;
  std::set<int> dues;
  for (const Job& j : instance.jobs) dues.insert(j.due);
  for (const Facility& f : instance.facilities) {
    int fp = instance.facility_pos(f.id);
    for (int d : dues) {
      LinearCut cut;
      cut.tag = CutTag::RelaxTardiness1;
      cut.coeffs[VarKey::tvar(f.id)] = Rat(1);
      for (const Job& j : instance.jobs) {
        if (j.due > d) continue;
        cut.coeffs[VarKey::x(f.id, j.id)] =
            Rat(-static_cast<long long>(j.proc[fp]) * j.demand[fp], f.capacity);
      }
      cut.rhs = Rat(-d);
      out.push_back(cut);
    }
  }
  return out;
}

std::vector<LinearCut> tardiness_relaxation_2(const Instance& instance) {
  std::vector<LinearCut> out;
  const int n = static_cast<int>(instance.jobs.size());

  std::vector<int> by_due;
  for (const Job& j : instance.jobs) by_due.push_back(j.id);
  std::sort(by_due.begin(), by_due.end(), [&](int a, int b) {
    const Job& ja = instance.job(a);
    const Job& jb = instance.job(b);
    if (ja.due != jb.due) return ja.due < jb.due;
    return a < b;
  });

  for (const Facility& f : instance.facilities) {
    int fp = instance.facility_pos(f.id);

    auto energy = [&](int jid) {
      const Job& j = instance.job(jid);
      return static_cast<long long>(j.proc[fp]) * j.demand[fp];
    };
    std::vector<int> by_energy = by_due;
    std::sort(by_energy.begin(), by_energy.end(), [&](int a, int b) {
      if (energy(a) != energy(b)) return energy(a) < energy(b);
      return a < b;
    });

    LinearCut link;
    link.tag = CutTag::RelaxTardiness2;
    link.coeffs[VarKey::tvar(f.id)] = Rat(1);
    for (int k = 1; k <= n; ++k) link.coeffs[VarKey::that(f.id, k)] = Rat(-1);
    link.rhs = Rat(0);
    out.push_back(link);

    for (int k = 1; k <= n; ++k) {
      int job_k = by_due[k - 1];
      int d_k = instance.job(job_k).due;
      long long prefix_energy = 0;
      LinearCut cut;
      cut.tag = CutTag::RelaxTardiness2;
      cut.coeffs[VarKey::that(f.id, k)] = Rat(1);
      for (int pos = 0; pos < k; ++pos) {
        int jid = by_energy[pos];
        prefix_energy += energy(jid);
        cut.coeffs[VarKey::x(f.id, jid)] += Rat(-energy(jid), f.capacity);
      }
      Rat big_u = Rat(prefix_energy - d_k);
      cut.coeffs[VarKey::x(f.id, job_k)] += -big_u;
      cut.rhs = Rat(-d_k) - big_u;
      out.push_back(cut);
    }
  }
  return out;
}

std::vector<LinearCut> relaxation_cuts(const Instance& instance) {
  std::vector<LinearCut> out;
  switch (instance.objective) {
    case Objective::AssignCost:
      return energy_window_inequalities(instance);
    case Objective::Makespan: {
      out = energy_window_inequalities(instance);
      std::vector<LinearCut> ms = makespan_relaxation(instance);
      out.insert(out.end(), ms.begin(), ms.end());
      return out;
    }
    case Objective::TotalTardiness: {
      // Due dates are soft here, so window membership by due date is not
      // meaningful and the energy inequalities are skipped.
      out = tardiness_relaxation_1(instance);
      std::vector<LinearCut> t2 = tardiness_relaxation_2(instance);
      out.insert(out.end(), t2.begin(), t2.end());
      return out;
    }
  }
  return out;
}

}  // namespace lbbd
