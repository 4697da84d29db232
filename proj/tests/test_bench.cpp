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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "alrb/bench.hpp"
#include "test_support.hpp"

using namespace alrb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("alrb_test_bench_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

SolveOptions quick() {
  SolveOptions o;
  o.time_limit = Seconds(30.0);
  return o;
}

BenchmarkRecord record(const std::string& id, int size, Scenario s, double t, double wl) {
  BenchmarkRecord r;
  r.instance_id = id;
  r.size = size;
  r.scenario = s;
  r.solve_time = Seconds(t);
  r.status = SolveStatus::Optimal;
  r.msf = 0.5;
  r.fairness = Fairness{wl, wl, wl, wl};
  r.baseline_fairness = Fairness{1.0, 1.0, 1.0, 1.0};
  return r;
}

Instance chain_instance() {
  // 2 -> 3 -> 1 -> 4 with times 4, 6, 6, 4: only an order-violating split
  // balances two workers at cycle time 10.
  Instance inst;
  inst.tasks = {{4, 1, Area::External}, {6, 1, Area::External}, {6, 1, Area::External},
                {4, 1, Area::External}};
  inst.precedence = PrecedenceGraph(4);
  inst.precedence.add(2, 1);
  inst.precedence.add(0, 2);
  inst.precedence.add(3, 0);
  inst.num_stations = 2;
  inst.num_workers = 2;
  inst.cycle_time = 10;
  return inst;
}

}  // namespace

TEST_CASE("names round-trip") {
  for (Scenario s : kScenarios) CHECK(scenario_from_name(scenario_name(s)) == s);
  for (EncodingCheck e : {EncodingCheck::Semantic, EncodingCheck::Linearized, EncodingCheck::Both}) {
    CHECK(encoding_check_from_name(encoding_check_name(e)) == e);
  }
  CHECK_THROWS_AS(scenario_from_name("warm"), std::invalid_argument);
  CHECK(scenario_gap(Scenario::OptimalStart) == 0.0);
  CHECK(scenario_gap(Scenario::SuboptimalStart) == 0.8);
}

TEST_CASE("empty manifest gives header-only tables") {
  const fs::path dir = scratch("empty");
  SuiteOptions o;
  o.out_dir = (dir / "out").string();
  const auto records = run_suite(Manifest{}, dir.string(), o);
  CHECK(records.empty());
  for (const char* f : {"records.csv", "cactus.csv", "fairness.csv", "robustness.csv"}) {
    const auto rows = lines(slurp(dir / "out" / f));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].find(',') != std::string::npos);
  }
}

TEST_CASE("fairness table groups by size") {
  std::vector<BenchmarkRecord> records;
  for (int size : {10, 20}) {
    for (int seed = 1; seed <= 10; ++seed) {
      const std::string id = "n" + std::to_string(size) + "_s" + std::to_string(seed);
      records.push_back(record(id, size, Scenario::OptimalStart, seed, size / 100.0));
      records.push_back(record(id, size, Scenario::SuboptimalStart, seed, 1.0));
    }
  }
  const auto rows = lines(fairness_csv(records));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "size,instances,msf,wl_nr,wl_cv,el_nr,el_cv");
  CHECK(rows[1] == "10,10,0.5,0.1,0.1,0.1,0.1");
  CHECK(rows[2] == "20,10,0.5,0.2,0.2,0.2,0.2");
}

TEST_CASE("cactus rows are sorted by solve time") {
  std::vector<BenchmarkRecord> records;
  testing::Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    records.push_back(record("n8_s" + std::to_string(k), 8, Scenario::OptimalStart,
                             testing::uniform(rng, 0, 1000) / 100.0, 0.1));
  }
  records.push_back(BenchmarkRecord{});  // failed record, no metrics
  const auto rows = lines(cactus_csv(records));
  REQUIRE(rows.size() == 51);
  double prev = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream row(rows[i]);
    std::string rank, time;
    std::getline(row, rank, ',');
    std::getline(row, time, ',');
    CHECK(std::stoi(rank) == static_cast<int>(i));
    CHECK(std::stod(time) >= prev);
    prev = std::stod(time);
  }
}

TEST_CASE("robustness table pairs both scenarios") {
  std::vector<BenchmarkRecord> records = {
      record("a", 8, Scenario::OptimalStart, 1, 0.2), record("a", 8, Scenario::SuboptimalStart, 1, 0.4),
      record("b", 8, Scenario::OptimalStart, 1, 0.6)};
  const auto rows = lines(robustness_csv(records));
  REQUIRE(rows.size() == 5);
  CHECK(rows[1] == "optimal_start,1,,1,1,1,1");
  CHECK(rows[2] == "rebalancing_opt,1,0.5,0.2,0.2,0.2,0.2");
  CHECK(rows[4] == "rebalancing_subopt,1,0.5,0.4,0.4,0.4,0.4");
}

TEST_CASE("diagnosis names the blocking family") {
  Instance inst = chain_instance();
  CHECK(diagnose_infeasibility(inst, 5, quick()).rfind("cycle_time: task 2 takes 6 > 5", 0) == 0);
  CHECK(diagnose_infeasibility(inst, 10, quick()) == "precedence at |W| = 2");

  Instance areas;
  areas.tasks = {{6, 1, Area::Internal}, {6, 1, Area::Internal}, {2, 1, Area::External}};
  areas.precedence = PrecedenceGraph(3);
  areas.num_stations = 1;
  CHECK(diagnose_infeasibility(areas, 8, quick()) == "work_area at |W| = 2");
}

TEST_CASE("rebalance wraps infeasibility with the diagnosis") {
  Instance inst = chain_instance();
  inst.current = Configuration{{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 1}};
  inst.current_cycle_time = 12;
  try {
    run_rebalance(inst, 5, quick());
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("blocked by cycle_time") != std::string::npos);
  }
  Instance bare = chain_instance();
  CHECK_THROWS_AS(run_rebalance(bare, 10, quick()), std::invalid_argument);
}

TEST_CASE("rebalance of an already balanced start is a no-op") {
  Instance inst;
  inst.tasks = {{5, 2, Area::External}, {5, 2, Area::Internal}};
  inst.precedence = PrecedenceGraph(2);
  inst.num_stations = 2;
  inst.num_workers = 2;
  inst.current = Configuration{{0, 1}, {0, 1}, {0, 1}};
  inst.current_cycle_time = 6;
  const RebalanceOutcome o = run_rebalance(inst, 5, quick());
  REQUIRE(o.report.has_value());
  CHECK(o.sized.num_workers == 2);
  CHECK(*o.report->msf == 1.0);
  CHECK(o.report->delta_l == 0);
  CHECK(o.report->delta_h == 0);
}

TEST_CASE("rebalance metrics recompute from the raw configuration") {
  testing::Rng rng(7);
  for (int rep = 0; rep < 15; ++rep) {
    Instance inst = testing::random_instance(rng, {6, 2, 3, 7, 0.3, true});
    RebalanceOutcome o;
    try {
      o = run_rebalance(inst, 12, quick());
    } catch (const InfeasibleError&) {
      continue;
    }
    REQUIRE(o.report.has_value());
    const ObjectiveComponents f = testing::oracle_components(*o.result.incumbent, o.sized);
    CHECK(-*o.report->msf == doctest::Approx(f.neg_msf).epsilon(1e-12));
    CHECK(o.report->delta_l == f.delta_l);
    CHECK(o.report->delta_h == f.delta_h);
    CHECK(testing::incumbent_valid(o.result, o.sized, 12));
  }
}

TEST_CASE("manifest round-trip") {
  Manifest m;
  m.params.sizes = {6, 9};
  m.params.seeds_per_size = 3;
  m.params.first_seed = 4;
  m.params.generator.num_stations = 3;
  m.instances.push_back({"n6_s4", 6, 4, 18, 2, "instances/a.json", "instances/b.json"});
  m.discards.push_back({"n9_s5", 9, 5, "no baseline"});
  const Manifest back = manifest_from_json(manifest_to_json(m));
  CHECK(back.params.sizes == m.params.sizes);
  CHECK(back.params.first_seed == 4);
  CHECK(back.params.generator.num_stations == 3);
  REQUIRE(back.instances.size() == 1);
  CHECK(back.instances[0].suboptimal_file == "instances/b.json");
  CHECK(back.instances[0].baseline_workers == 2);
  REQUIRE(back.discards.size() == 1);
  CHECK(back.discards[0].reason == "no baseline");
  CHECK_THROWS_AS(manifest_from_json(nlohmann::json::object()), ParseError);
}

TEST_CASE("suite generation, resumable runs and recomputable records") {
  const fs::path dir = scratch("suite");
  SuiteParams params;
  params.sizes = {6, 8};
  params.seeds_per_size = 2;
  const Manifest m = generate_suite(params, dir.string(), quick(), 2);
  CHECK(m.instances.size() + m.discards.size() == 4);
  REQUIRE_FALSE(m.instances.empty());
  const Manifest loaded = load_manifest_file((dir / "manifest.json").string());
  CHECK(loaded.instances.size() == m.instances.size());
  for (const ManifestEntry& e : m.instances) {
    const Instance opt = load_instance_file((dir / e.optimal_file).string());
    const Instance sub = load_instance_file((dir / e.suboptimal_file).string());
    CHECK(opt.current_cycle_time == e.baseline_cycle_time);
    CHECK(sub.current_cycle_time == e.baseline_cycle_time);
    CHECK(check_semantic(*opt.current, opt, e.baseline_cycle_time).empty());
  }

  SuiteOptions o;
  o.solve = quick();
  o.out_dir = (dir / "out").string();
  o.parallelism = 2;
  const auto first = run_suite(loaded, dir.string(), o);
  REQUIRE(first.size() == 2 * m.instances.size());
  for (const BenchmarkRecord& r : first) {
    CHECK_FALSE(r.resumed);
    CHECK(r.error.empty());
    CHECK(r.has_metrics());
    CHECK(r.encodings_agree);
    // Every metric comes back from the emitted solution file.
    const fs::path sol_path =
        dir / "out" / "solutions" / (r.instance_id + "_" + std::string(scenario_name(r.scenario)) + ".json");
    const Solution sol = load_solution_file(sol_path.string());
    const Instance inst = load_instance_file(
        (dir / "instances" / (r.instance_id + "_" + std::string(scenario_name(r.scenario)) + ".json")).string());
    const Instance sized = inst.with_workers(sol.configuration->num_workers());
    const ObjectiveReport rep = make_report(*sol.configuration, sized);
    CHECK(*rep.msf == doctest::Approx(*r.msf).epsilon(1e-12));
    CHECK(fairness(rep).wl_nr == doctest::Approx(r.fairness->wl_nr).epsilon(1e-12));
  }

  // Break one solution file; the rerun re-solves only that one.
  const fs::path broken =
      dir / "out" / "solutions" / (first[0].instance_id + "_optimal_start.json");
  { std::ofstream(broken) << "{"; }
  const auto second = run_suite(loaded, dir.string(), o);
  REQUIRE(second.size() == first.size());
  for (std::size_t k = 0; k < second.size(); ++k) {
    CHECK(second[k].resumed == (k != 0));
    CHECK(second[k].msf == first[k].msf);
  }
  CHECK(lines(slurp(dir / "out" / "records.csv")).size() == first.size() + 1);
  CHECK(lines(slurp(dir / "out" / "fairness.csv")).size() >= 2);
  fs::remove_all(dir);
}
