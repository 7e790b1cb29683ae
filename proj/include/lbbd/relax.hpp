#pragma once

#include <vector>

#include "lbbd/model.hpp"

namespace lbbd {

// Candidate energy window [t1, t2) on one facility with its tightness
// (1/C_i) sum of covered energies - (t2 - t1).
struct WindowPair {
  int facility_id = 0;
  int t1 = 0;
  int t2 = 0;
  Rat tightness;

  bool operator==(const WindowPair&) const = default;
};

// Jobs whose whole window [r_j, d_j] sits inside [t1, t2].
std::vector<int> jobs_in_window(const Instance& instance, int t1, int t2);

std::vector<WindowPair> candidate_windows(const Instance& instance, int facility_id);

// Drops every pair that a kept subinterval with at least the same tightness
// makes redundant.
std::vector<WindowPair> prune_dominated(std::vector<WindowPair> pairs);

// sum_{j in window} p c X(i,j) <= C_i (t2 - t1), one per surviving window.
std::vector<LinearCut> energy_window_inequalities(const Instance& instance);

// Mvar(i) >= t + (1/C_i) sum_{r_j >= t} p c X(i,j), one per distinct release.
std::vector<LinearCut> makespan_relaxation(const Instance& instance);

// Tvar(i) >= (1/C_i) sum_{d_j <= d} p c X(i,j) - d, one per distinct due date.
std::vector<LinearCut> tardiness_relaxation_1(const Instance& instance);

// The energy-prefix relaxation through the That(i,k) variables.
std::vector<LinearCut> tardiness_relaxation_2(const Instance& instance);

// All relaxation inequalities applicable to the instance objective.
std::vector<LinearCut> relaxation_cuts(const Instance& instance);

}  // namespace lbbd
