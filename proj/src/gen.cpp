#include "lbbd/gen.hpp"

#include <algorithm>

namespace lbbd {

Instance generate_instance(Lcg& rng, const GenParams& params) {
  Instance inst;
  inst.objective = params.objective;

  const int n = rng.uniform(params.min_jobs, params.max_jobs);
  const int m = rng.uniform(params.min_facilities, params.max_facilities);

  int pmax = params.max_proc;
  if (pmax <= 0) pmax = std::max(1, (params.horizon_cap - params.max_release) / n);

  for (int i = 1; i <= m; ++i) inst.facilities.push_back({i, rng.uniform(1, 3)});

  for (int j = 1; j <= n; ++j) {
    Job job;
    job.id = j;
    job.release = rng.uniform(0, params.max_release);
    int max_p = 0;
    for (int i = 0; i < m; ++i) {
      job.proc.push_back(rng.uniform(1, pmax));
      job.demand.push_back(rng.uniform(1, inst.facilities[i].capacity));
      job.cost.push_back(rng.uniform(1, 9));
      max_p = std::max(max_p, job.proc.back());
    }
    job.due = job.release + rng.uniform(1, 3) * max_p;
    inst.jobs.push_back(job);
  }
  inst.horizon = inst.default_horizon();
  return inst;
}

}  // namespace lbbd
