#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "lbbd/gen.hpp"
#include "lbbd/model.hpp"

using namespace lbbd;

namespace {

Instance two_job_instance() {
  Instance inst;
  inst.facilities = {{1, 2}, {2, 1}};
  inst.jobs = {
      {1, 0, 10, {2, 3}, {1, 1}, {4, 2}},
      {2, 1, 8, {3, 2}, {2, 1}, {1, 5}},
  };
  inst.objective = Objective::Makespan;
  inst.horizon = inst.default_horizon();
  return inst;
}

}  // namespace

TEST_CASE("validate accepts a consistent instance") {
  Instance inst = two_job_instance();
  CHECK(validate(inst).empty());
}

TEST_CASE("validate flags zero capacity") {
  Instance inst = two_job_instance();
  inst.facilities[0].capacity = 0;
  auto diags = validate(inst);
  REQUIRE(!diags.empty());
  CHECK(has_errors(diags));
  bool mentioned = false;
  for (const auto& d : diags)
    if (d.message.find("facility 1 capacity < 1") != std::string::npos) mentioned = true;
  CHECK(mentioned);
}

TEST_CASE("demand above capacity is a note, not an error") {
  Instance inst = two_job_instance();
  inst.jobs[1].demand[0] = 3;  // facility 1 has capacity 2
  auto diags = validate(inst);
  REQUIRE(!diags.empty());
  CHECK(!has_errors(diags));
  bool mentioned = false;
  for (const auto& d : diags) {
    if (d.message.find("job 2 unassignable to facility 1") != std::string::npos) {
      mentioned = true;
      CHECK(d.severity == Diagnostic::Severity::Note);
    }
  }
  CHECK(mentioned);
}

TEST_CASE("validate flags negative release and horizon below the safe bound") {
  Instance inst = two_job_instance();
  inst.jobs[0].release = -1;
  CHECK(has_errors(validate(inst)));

  Instance tight = two_job_instance();
  tight.horizon = tight.default_horizon() - 1;
  CHECK(has_errors(validate(tight)));
}

TEST_CASE("instance json round-trips") {
  Instance inst = two_job_instance();
  std::string path = (std::filesystem::temp_directory_path() / "lbbd_roundtrip.json").string();
  save_instance(inst, path);
  Instance back = load_instance(path);
  CHECK(back == inst);
  std::remove(path.c_str());
}

TEST_CASE("round-trip holds when facilities are listed out of id order") {
  Instance inst = two_job_instance();
  std::swap(inst.facilities[0], inst.facilities[1]);
  for (Job& j : inst.jobs) {
    std::swap(j.proc[0], j.proc[1]);
    std::swap(j.demand[0], j.demand[1]);
    std::swap(j.cost[0], j.cost[1]);
  }
  Instance back = instance_from_json(instance_to_json(inst));
  CHECK(back == inst);
}

TEST_CASE("missing capacity field names the field") {
  std::string text = R"({"facilities":[{"id":1}],"jobs":[],"objective":"makespan"})";
  CHECK_THROWS_WITH_AS(instance_from_json(text),
                       doctest::Contains("capacity"), std::runtime_error);
}

TEST_CASE("negative release loads, validation reports it") {
  std::string text = R"({
    "facilities": [{"id": 1, "capacity": 1}],
    "jobs": [{"id": 1, "release": -2, "due": 5, "proc": [2], "demand": [1], "cost": [1]}],
    "objective": "makespan",
    "horizon": 10
  })";
  Instance inst = instance_from_json(text);
  CHECK(inst.jobs[0].release == -2);
  CHECK(has_errors(validate(inst)));
}

TEST_CASE("missing horizon defaults to the safe bound") {
  std::string text = R"({
    "facilities": [{"id": 1, "capacity": 1}],
    "jobs": [{"id": 1, "release": 3, "due": 9, "proc": [4], "demand": [1], "cost": [1]}],
    "objective": "tardiness"
  })";
  Instance inst = instance_from_json(text);
  CHECK(inst.horizon == 7);
}

TEST_CASE("assignment-derived job sets partition the jobs") {
  Lcg rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    GenParams params;
    params.max_jobs = 6;
    params.max_facilities = 3;
    Instance inst = generate_instance(rng, params);
    Assignment a;
    for (const Job& j : inst.jobs)
      a.facility_of[j.id] = inst.facilities[rng.uniform(0, (int)inst.facilities.size() - 1)].id;
    size_t covered = 0;
    for (const Facility& f : inst.facilities) {
      for (int jid : a.jobs_on(f.id)) {
        CHECK(a.facility_of.at(jid) == f.id);
        ++covered;
      }
    }
    CHECK(covered == inst.jobs.size());
  }
}

TEST_CASE("generated instances round-trip through json") {
  Lcg rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    GenParams params;
    params.objective = static_cast<Objective>(trial % 3);
    Instance inst = generate_instance(rng, params);
    CHECK(instance_from_json(instance_to_json(inst)) == inst);
    CHECK(!has_errors(validate(inst)));
  }
}

TEST_CASE("rational arithmetic normalizes and compares exactly") {
  CHECK(Rat(6, 4) == Rat(3, 2));
  CHECK(Rat(-6, 4) == Rat(3, -2));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK((Rat(7) * Rat(2, 7)) == Rat(2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(5, 2).str() == "5/2");
  CHECK(Rat(-4).str() == "-4");
  CHECK(!Rat(1, 2).is_integer());
}
