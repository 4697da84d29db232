// Copyright 2026 The alrb Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alrb/encoding.hpp"
#include "test_support.hpp"

using namespace alrb;

namespace {

Instance make_instance(const std::vector<std::pair<int, Area>>& tasks, int stations, int workers,
                       int ct = 20) {
  Instance inst;
  for (auto [tau, area] : tasks) inst.tasks.push_back({tau, 1, area});
  inst.precedence = PrecedenceGraph(tasks.size());
  inst.num_stations = stations;
  inst.num_workers = workers;
  inst.cycle_time = ct;
  return inst;
}

Configuration make_config(std::vector<int> worker_station, std::vector<int> task_worker) {
  Configuration c;
  c.worker_station = std::move(worker_station);
  c.task_worker = std::move(task_worker);
  for (int w : c.task_worker) c.task_station.push_back(c.worker_station[w]);
  return c;
}

testing::InstanceShape guarded_shape(testing::Rng& rng) {
  testing::InstanceShape shape;
  shape.tasks = testing::uniform(rng, 1, 5);
  shape.stations = testing::uniform(rng, 1, 2);
  shape.workers = testing::uniform(rng, shape.stations, 3);
  shape.max_tau = 7;
  return shape;
}

}  // namespace

TEST_CASE("semantic: successor before predecessor") {
  Instance inst = make_instance({{2, Area::External}, {2, Area::External}}, 2, 2);
  inst.precedence.add(1, 0);
  const Configuration c = make_config({1, 0}, {0, 1});  // task 1 at station 2, task 2 at 1
  const ViolationList v = check_semantic(c, inst, 20);
  REQUIRE(v.contains(ConstraintTag::Precedence));
  for (const Violation& e : v.entries) {
    if (e.tag == ConstraintTag::Precedence) CHECK(e.indices == std::vector<int>{0, 1});
  }
}

TEST_CASE("semantic: mixed areas in a shared station") {
  const Instance inst = make_instance({{2, Area::Internal}, {2, Area::External}}, 1, 2);
  const ViolationList v = check_semantic(make_config({0, 0}, {0, 0}), inst, 20);
  REQUIRE(v.size() == 1);
  CHECK(v.entries[0].tag == ConstraintTag::WorkArea);
  CHECK(v.entries[0].indices == std::vector<int>{0});
}

TEST_CASE("semantic: a solo worker may mix areas") {
  const Instance inst = make_instance({{2, Area::Internal}, {2, Area::External}}, 1, 1);
  CHECK(check_semantic(make_config({0}, {0, 0}), inst, 20).empty());
}

TEST_CASE("semantic: cycle time, staffing and structure") {
  const Instance inst = make_instance({{6, Area::External}, {6, Area::External}}, 2, 3);
  CHECK(check_semantic(make_config({0, 0, 1}, {0, 0}), inst, 11).contains(ConstraintTag::CycleTime));
  // Three workers on two stations: each station needs one or two.
  CHECK(check_semantic(make_config({0, 0, 0}, {0, 1}), inst, 20).contains(ConstraintTag::Staffing));
  // Task on a worker without a station.
  Configuration c = make_config({0, 1, 1}, {0, 1});
  c.worker_station[0] = kUnassigned;
  c.task_station[0] = 0;
  CHECK(check_semantic(c, inst, 20).contains(ConstraintTag::Structure));
  // Task station disagrees with its worker's station.
  Configuration d = make_config({0, 1, 1}, {0, 1});
  d.task_station[0] = 1;
  CHECK(check_semantic(d, inst, 20).contains(ConstraintTag::Consistency));
  Configuration bad = make_config({0, 1, 1}, {0, 1});
  bad.task_worker[1] = 9;
  CHECK(check_semantic(bad, inst, 20).contains(ConstraintTag::Structure));
}

TEST_CASE("semantic: an idle unassigned worker is allowed") {
  const Instance inst = make_instance({{3, Area::External}, {3, Area::Internal}}, 2, 3);
  CHECK(check_semantic(make_config({0, 1, kUnassigned}, {0, 1}), inst, 20).empty());
}

TEST_CASE("linearized: derived witness of a feasible configuration passes") {
  Instance inst = make_instance({{2, Area::Internal}, {2, Area::Internal}, {3, Area::External}},
                                2, 3);
  const Configuration c = make_config({0, 0, 1}, {0, 0, 2});
  REQUIRE(check_semantic(c, inst, 20).empty());
  const LinearAux aux = derive_aux(c, inst, 20);
  CHECK(check_linearized(c, aux, inst, 20).empty());
}

TEST_CASE("linearized: wrong area flag in a shared station") {
  const Instance inst = make_instance({{2, Area::Internal}, {2, Area::External}}, 1, 2);
  const Configuration c = make_config({0, 0}, {0, 1});
  LinearAux aux = derive_aux(c, inst, 20);
  CHECK(aux.area_flag[0]);
  aux.area_flag[0] = false;
  const ViolationList v = check_linearized(c, aux, inst, 20);
  CHECK(v.contains(ConstraintTag::WorkAreaInternal));
}

TEST_CASE("linearized: co-assignment indicator without the task") {
  Instance inst = make_instance({{2, Area::External}, {2, Area::External}}, 2, 2);
  inst.current = make_config({0, 1}, {0, 0});  // tasks 1 and 2 together
  inst.current_cycle_time = 4;
  const Configuration c = make_config({0, 1}, {0, 1});  // now apart
  LinearAux aux = derive_aux(c, inst, 20);
  REQUIRE_FALSE(aux.coassign.empty());
  aux.coassign[0].by_station[1] = true;  // claims task 1 is at station 2
  CHECK(check_linearized(c, aux, inst, 20).contains(ConstraintTag::CoassignA));
}

TEST_CASE("derive_aux examples") {
  SUBCASE("solo worker with mixed tasks") {
    const Instance inst = make_instance({{2, Area::Internal}, {2, Area::External}}, 1, 1);
    const LinearAux aux = derive_aux(make_config({0}, {0, 0}), inst, 20);
    CHECK(aux.solo_flag[0][0]);
    CHECK_FALSE(aux.area_flag[0]);
  }
  SUBCASE("shared station, two internal tasks") {
    const Instance inst =
        make_instance({{2, Area::Internal}, {2, Area::Internal}, {1, Area::External}}, 1, 2);
    const LinearAux aux = derive_aux(make_config({0, 0}, {0, 0, 1}), inst, 20);
    CHECK(aux.area_flag[0]);
    CHECK_FALSE(aux.area_flag[1]);
    CHECK_FALSE(aux.solo_flag[0][0]);
  }
  SUBCASE("co-stationed in both configurations") {
    Instance inst = make_instance({{2, Area::External}, {2, Area::External}}, 2, 2);
    inst.current = make_config({0, 1}, {1, 1});
    inst.current_cycle_time = 4;
    const LinearAux aux = derive_aux(make_config({0, 1}, {0, 0}), inst, 20);
    REQUIRE(aux.coassign.size() == 2);
    for (const CoassignEntry& e : aux.coassign) {
      CHECK(e.by_station == std::vector<bool>{true, false});
    }
  }
  SUBCASE("infeasible input is refused") {
    const Instance inst = make_instance({{2, Area::Internal}, {2, Area::External}}, 1, 2);
    CHECK_THROWS_AS(derive_aux(make_config({0, 0}, {0, 0}), inst, 20), std::invalid_argument);
  }
}

TEST_CASE("enumerate_feasible: single point") {
  const Instance inst = make_instance({{5, Area::Internal}}, 1, 1);
  for (Encoding e : {Encoding::Semantic, Encoding::Linearized}) {
    CHECK(enumerate_feasible(inst, 5, e).size() == 1);
    CHECK(enumerate_feasible(inst, 4, e).empty());
  }
}

TEST_CASE("enumerate_feasible: size guard") {
  const Instance big = make_instance(std::vector<std::pair<int, Area>>(7, {1, Area::External}), 1, 1);
  CHECK_THROWS_AS(enumerate_feasible(big, 20, Encoding::Semantic), SizeGuardError);
}

TEST_CASE("semantic checker agrees with the plain-rule oracle") {
  testing::Rng rng(41);
  int feasible = 0;
  for (int rep = 0; rep < 5000; ++rep) {
    testing::InstanceShape shape;
    shape.tasks = testing::uniform(rng, 1, 8);
    shape.stations = testing::uniform(rng, 1, 3);
    shape.workers = testing::uniform(rng, shape.stations, 5);
    const Instance inst = testing::random_instance(rng, shape);
    const Configuration c =
        testing::random_configuration(rng, shape.tasks, shape.stations, shape.workers, 0.2);
    const int ct = testing::uniform(rng, 4, 20);
    const bool oracle = testing::oracle_feasible(c, inst, ct);
    feasible += oracle ? 1 : 0;
    CHECK(check_semantic(c, inst, ct).empty() == oracle);
    // Both directions of the encoding equivalence on single configurations.
    const auto aux = find_linear_aux(c, inst, ct);
    CHECK(aux.has_value() == oracle);
    if (oracle) CHECK(check_linearized(c, derive_aux(c, inst, ct), inst, ct).empty());
    if (aux) CHECK(check_linearized(c, *aux, inst, ct).empty());
  }
  CHECK(feasible > 100);
}

TEST_CASE("enumeration matches the oracle and both encodings agree") {
  testing::Rng rng(43);
  for (int rep = 0; rep < 60; ++rep) {
    const testing::InstanceShape shape = guarded_shape(rng);
    const Instance inst = testing::random_instance(rng, shape);
    const int ct = testing::uniform(rng, 5, 14);
    const auto semantic = enumerate_feasible(inst, ct, Encoding::Semantic);
    CHECK(semantic == testing::oracle_enumerate(inst, ct));
    CHECK(semantic == enumerate_feasible(inst, ct, Encoding::Linearized));
  }
}

TEST_CASE("serial and parallel enumeration agree") {
  testing::Rng rng(47);
  for (int rep = 0; rep < 20; ++rep) {
    const testing::InstanceShape shape = guarded_shape(rng);
    const Instance inst = testing::random_instance(rng, shape);
    for (Encoding e : {Encoding::Semantic, Encoding::Linearized}) {
      CHECK(enumerate_feasible(inst, 12, e) == enumerate_feasible_serial(inst, 12, e));
    }
  }
}

TEST_CASE("violation report document uses 1-based indices") {
  Instance inst = make_instance({{2, Area::External}, {2, Area::External}}, 2, 2);
  inst.precedence.add(1, 0);
  const auto doc = violations_to_json(check_semantic(make_config({1, 0}, {0, 1}), inst, 20));
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["constraint"] == "precedence");
  CHECK(doc[0]["indices"] == nlohmann::json::array({1, 2}));
}
