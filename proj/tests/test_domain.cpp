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

#include <sstream>

#include "alrb/domain.hpp"
#include "test_support.hpp"

using namespace alrb;
using nlohmann::json;

namespace {

json minimal_doc() {
  return json::parse(R"({
    "cycle_time": 10, "num_stations": 1, "num_workers": 1,
    "tasks": [ {"id": 1, "time": 4, "ergo": 2, "area": 1} ],
    "precedence": [], "current": null })");
}

std::vector<std::string> problems_of(const json& doc) {
  try {
    instance_from_json(doc);
  } catch (const ValidationError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& text) {
  for (const auto& p : problems) {
    if (p.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("load_instance: smallest legal document") {
  std::istringstream in(minimal_doc().dump());
  const Instance inst = load_instance(in);
  CHECK(inst.num_tasks() == 1);
  CHECK(inst.tasks[0].processing_time == 4);
  CHECK(inst.tasks[0].ergonomic_index == 2);
  CHECK(inst.tasks[0].area == Area::Internal);
  CHECK_FALSE(inst.current.has_value());
}

TEST_CASE("load_instance: cyclic precedence is rejected") {
  json doc = minimal_doc();
  doc["tasks"].push_back({{"id", 2}, {"time", 1}, {"ergo", 1}, {"area", 0}});
  doc["precedence"] = json::parse(R"([{"task": 1, "preds": [2]}, {"task": 2, "preds": [1]}])");
  const auto problems = problems_of(doc);
  REQUIRE_FALSE(problems.empty());
  CHECK(mentions(problems, "cyclic precedence"));
}

TEST_CASE("load_instance: ergonomic index out of range names task and field") {
  json doc = minimal_doc();
  doc["tasks"][0]["ergo"] = 6;
  const auto problems = problems_of(doc);
  CHECK(mentions(problems, "task 1"));
  CHECK(mentions(problems, "'ergo'"));
}

TEST_CASE("load_instance: every problem is reported at once") {
  json doc = minimal_doc();
  doc["tasks"][0]["ergo"] = 0;
  doc["tasks"][0]["time"] = 0;
  doc["num_workers"] = 0;
  const auto problems = problems_of(doc);
  CHECK(problems.size() >= 3);
}

TEST_CASE("load_instance: malformed documents raise parse errors") {
  std::istringstream bad("{ not json");
  CHECK_THROWS_AS(load_instance(bad), ParseError);
  json doc = minimal_doc();
  doc.erase("num_stations");
  CHECK_THROWS_AS(instance_from_json(doc), ParseError);
  doc = minimal_doc();
  doc["tasks"][0]["time"] = "four";
  CHECK_THROWS_AS(instance_from_json(doc), ParseError);
}

TEST_CASE("load_instance: ids must be dense and 1-based") {
  json doc = minimal_doc();
  doc["tasks"][0]["id"] = 0;
  CHECK(mentions(problems_of(doc), "id 0"));
  doc = minimal_doc();
  doc["tasks"].push_back({{"id", 1}, {"time", 1}, {"ergo", 1}, {"area", 0}});
  CHECK_FALSE(problems_of(doc).empty());
}

TEST_CASE("load_instance: fewer workers than stations is invalid") {
  json doc = minimal_doc();
  doc["num_stations"] = 2;
  CHECK(mentions(problems_of(doc), "smaller than num_stations"));
}

TEST_CASE("load_instance: current configuration is validated") {
  json doc = minimal_doc();
  doc["current"] = json::parse(
      R"({"cycle_time": 10, "task_station": [1], "task_worker": [1], "worker_station": [1]})");
  CHECK(instance_from_json(doc).current.has_value());

  doc["current"]["cycle_time"] = 3;  // load 4 exceeds it
  CHECK(mentions(problems_of(doc), "exceeds recorded cycle time"));

  doc["current"]["cycle_time"] = 10;
  doc["current"]["worker_station"] = {0};  // task 1 on a worker without station
  CHECK_FALSE(problems_of(doc).empty());
}

TEST_CASE("topological_order examples") {
  PrecedenceGraph empty(3);
  CHECK(topological_order(empty) == std::vector<int>{0, 1, 2});

  PrecedenceGraph chain(3);
  chain.add(2, 0);
  chain.add(2, 1);
  chain.add(1, 0);
  CHECK(topological_order(chain) == std::vector<int>{0, 1, 2});

  PrecedenceGraph cyc(2);
  cyc.add(0, 1);
  cyc.add(1, 0);
  try {
    topological_order(cyc);
    FAIL("expected a cycle error");
  } catch (const CycleError& e) {
    std::vector<int> c = e.cycle();
    std::sort(c.begin(), c.end());
    CHECK(c == std::vector<int>{0, 1});
  }
}

TEST_CASE("topological_order: reported cycle is a real cycle") {
  testing::Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = testing::uniform(rng, 2, 9);
    PrecedenceGraph g(n);
    for (int e = 0; e < n * 2; ++e) {
      const int a = testing::uniform(rng, 0, n - 1), b = testing::uniform(rng, 0, n - 1);
      if (a != b) g.add(a, b);
    }
    try {
      const auto order = topological_order(g);
      REQUIRE(static_cast<int>(order.size()) == n);
      std::vector<int> pos(n);
      for (int k = 0; k < n; ++k) pos[order[k]] = k;
      for (int t = 0; t < n; ++t) {
        for (int p : g.predecessors(t)) CHECK(pos[p] < pos[t]);
      }
    } catch (const CycleError& e) {
      const auto& c = e.cycle();
      REQUIRE(c.size() >= 2);
      for (std::size_t k = 0; k < c.size(); ++k) {
        const int from = c[k], to = c[(k + 1) % c.size()];
        const auto& preds = g.predecessors(to);
        CHECK(std::find(preds.begin(), preds.end(), from) != preds.end());
      }
    }
  }
}

TEST_CASE("worker_bounds examples and properties") {
  CHECK(worker_bounds(5, 2) == WorkerBounds{2, 3});
  CHECK(worker_bounds(6, 3) == WorkerBounds{2, 2});
  CHECK(worker_bounds(7, 3) == WorkerBounds{2, 3});
  CHECK_THROWS_AS(worker_bounds(0, 3), std::invalid_argument);
  for (int w = 1; w <= 40; ++w) {
    for (int s = 1; s <= 10; ++s) {
      const WorkerBounds b = worker_bounds(w, s);
      CHECK(b.lower * s <= w);
      CHECK(b.upper * s >= w);
      CHECK(b.upper - b.lower <= 1);
    }
  }
}

TEST_CASE("instance documents round-trip") {
  testing::Rng rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    testing::InstanceShape shape;
    shape.tasks = testing::uniform(rng, 1, 12);
    shape.stations = testing::uniform(rng, 1, 4);
    shape.workers = shape.stations + testing::uniform(rng, 0, 4);
    shape.with_current = rep % 2 == 0;
    const Instance inst = testing::random_instance(rng, shape);
    std::istringstream in(instance_to_json(inst).dump());
    const Instance back = load_instance(in);
    CHECK(back == inst);
    CHECK(instance_to_json(back) == instance_to_json(inst));
  }
}

TEST_CASE("derived flags") {
  Configuration c;
  c.worker_station = {0, 0, 1, kUnassigned};
  c.task_worker = {0, 1, 2, 2};
  c.task_station = {0, 0, 1, 1};
  Configuration ref;
  ref.worker_station = {0, 1};
  ref.task_worker = {0, 0, 1, 1};
  ref.task_station = {0, 0, 1, 1};
  const DerivedFlags f = derive_flags(c, 2, &ref);
  CHECK(f.station_shared == std::vector<bool>{true, false});
  CHECK(f.worker_shared == std::vector<bool>{true, true, false, false});
  REQUIRE(f.neighbor_sets.size() == 4);
  CHECK(f.neighbor_sets[0] == std::vector<int>{1});
  CHECK(f.neighbor_sets[2] == std::vector<int>{3});
  for (int i = 0; i < 4; ++i) {
    CHECK(std::find(f.neighbor_sets[i].begin(), f.neighbor_sets[i].end(), i) ==
          f.neighbor_sets[i].end());
  }
}
