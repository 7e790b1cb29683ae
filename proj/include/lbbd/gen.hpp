#pragma once

#include <cstdint>

#include "lbbd/model.hpp"

namespace lbbd {

// 64-bit linear congruential generator; draws take the high 31 bits so that
// documented seeds reproduce the same instances everywhere.
struct Lcg {
  std::uint64_t state = 0;

  explicit Lcg(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }

  // Uniform on [lo, hi], inclusive.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>((next() >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

struct GenParams {
  int min_jobs = 2;
  int max_jobs = 5;
  int min_facilities = 1;
  int max_facilities = 2;
  int max_release = 2;
  // 0 caps processing times per instance so the default horizon stays within
  // horizon_cap; a positive value is used directly.
  int max_proc = 0;
  int horizon_cap = 12;
  Objective objective = Objective::Makespan;
};

// Deterministic random instance: n, m, capacities in [1,3], releases,
// processing times, demands in [1,C_i], costs in [1,9], due dates
// r + u * max_i p with u in [1,3].
Instance generate_instance(Lcg& rng, const GenParams& params);

}  // namespace lbbd
