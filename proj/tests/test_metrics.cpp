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

#include <cmath>
#include <numeric>

#include "alrb/metrics.hpp"
#include "test_support.hpp"

using namespace alrb;
using doctest::Approx;

namespace {

/// One worker per station; `stations[i]` is task i's station.
Configuration by_station(const std::vector<int>& stations, int num_stations) {
  Configuration c;
  c.task_station = stations;
  c.task_worker = stations;
  for (int s = 0; s < num_stations; ++s) c.worker_station.push_back(s);
  return c;
}

Instance tasks_instance(const std::vector<int>& tau, const std::vector<int>& ergo) {
  Instance inst;
  for (std::size_t i = 0; i < tau.size(); ++i) inst.tasks.push_back({tau[i], ergo[i], Area::External});
  inst.precedence = PrecedenceGraph(tau.size());
  return inst;
}

}  // namespace

TEST_CASE("similarity factor examples") {
  const Configuration a = by_station({0, 0, 1, 1}, 2);
  const Configuration b = by_station({0, 1, 0, 1}, 2);
  for (int i = 0; i < 4; ++i) CHECK(similarity_factor(i, a, a) == 1.0);
  CHECK(similarity_factor(0, a, b) == 0.0);

  const Configuration c = by_station({0, 0, 0, 1}, 2);
  const Configuration d = by_station({0, 0, 1, 1}, 2);
  CHECK(similarity_factor(0, c, d) == 0.5);
  CHECK(similarity_factor(3, c, d) == 1.0);
  CHECK_THROWS(similarity_factor(7, c, d));
}

TEST_CASE("mean similarity examples") {
  const Configuration a = by_station({0, 0, 1, 1}, 2);
  CHECK(mean_similarity(a, a) == Approx(1.0).epsilon(1e-12));
  CHECK(mean_similarity(a, by_station({0, 1, 0, 1}, 2)) == Approx(0.0).epsilon(1e-12));
  CHECK(mean_similarity(by_station({0, 0, 0, 1}, 2), by_station({0, 0, 1, 1}, 2)) ==
        Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(mean_similarity(a, by_station({0, 0, 1}, 2)), std::invalid_argument);
}

TEST_CASE("mean similarity agrees with the direct formula and stays in [0, 1]") {
  testing::Rng rng(3);
  for (int rep = 0; rep < 2000; ++rep) {
    const int T = testing::uniform(rng, 1, 10), S = testing::uniform(rng, 1, 4);
    const Configuration cur = testing::random_configuration(rng, T, S, S + 2, 0.2);
    const Configuration pro = testing::random_configuration(rng, T, S, S + 1, 0.2);
    const double m = mean_similarity(cur, pro);
    CHECK(m == Approx(testing::oracle_msf(cur, pro)).epsilon(1e-12));
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    CHECK(mean_similarity(pro, pro) == 1.0);
  }
}

TEST_CASE("worker loads examples") {
  Instance inst = tasks_instance({3, 5, 7}, {2, 4, 5});
  Configuration c;
  c.worker_station = {0, 0, 1};
  c.task_worker = {0, 0, 2};
  c.task_station = {0, 0, 1};
  inst.num_stations = 2;
  inst.num_workers = 3;
  const WorkerLoads wl = worker_loads(c, inst);
  CHECK(wl.loads == std::vector<int>{8, 0, 7});
  CHECK(wl.ergo_loads == std::vector<int>{6, 0, 5});
}

TEST_CASE("load range examples") {
  CHECK(load_ranges(std::vector<int>{8, 8, 8}, std::vector<int>{1, 1, 1}).delta_l == 0);
  CHECK(load_ranges(std::vector<int>{5, 12}, std::vector<int>{1, 1}).delta_l == 7);
  CHECK(load_ranges(std::vector<int>{0, 10}, std::vector<int>{0, 3}).delta_l == 10);
  CHECK(load_ranges(std::vector<int>{0, 10}, std::vector<int>{0, 3}).delta_h == 3);
  CHECK_THROWS_AS(load_ranges(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("counted workers include idle workers with a station") {
  Configuration c;
  c.worker_station = {0, kUnassigned, 1};
  c.task_worker = {0};
  c.task_station = {0};
  CHECK(counted_workers(c) == std::vector<int>{0, 2});
  Instance inst = tasks_instance({6}, {2});
  inst.num_stations = 2;
  inst.num_workers = 3;
  const ObjectiveReport r = make_report(c, inst);
  CHECK(r.delta_l == 6);
  CHECK(r.l_min == 0);
}

TEST_CASE("normalized range and coefficient of variation examples") {
  CHECK(normalized_range(std::vector<double>{10, 10, 10}) == 0.0);
  CHECK(coefficient_of_variation(std::vector<double>{10, 10, 10}) == 0.0);
  CHECK(normalized_range(std::vector<double>{5, 15}) == Approx(1.0));
  CHECK(coefficient_of_variation(std::vector<double>{5, 15}) == Approx(0.5));
  CHECK(normalized_range(std::vector<double>{8, 10, 12}) == Approx(0.4));
  CHECK(coefficient_of_variation(std::vector<double>{8, 10, 12}) ==
        Approx(std::sqrt(8.0 / 3.0) / 10.0).epsilon(1e-12));
  CHECK_THROWS_AS(normalized_range(std::vector<double>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(coefficient_of_variation(std::vector<double>{-1, -3}), std::invalid_argument);
  CHECK_THROWS_AS(normalized_range(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("weighted objective examples") {
  NormalizationBounds b;
  b.utopia = {-1, 0, 0};
  b.nadir = {0, 8, 12};
  CHECK(weighted_objective({-1, 0, 0}, b, kEqualWeights) == Approx(0.0));
  CHECK(weighted_objective({0, 8, 12}, b, kEqualWeights) == Approx(1.0).epsilon(1e-12));
  CHECK(weighted_objective({-0.5, 4, 6}, b, kEqualWeights) == Approx(0.5).epsilon(1e-12));
  // Clamping beyond the empirical nadir and utopia.
  CHECK(weighted_objective({0.5, 16, -3}, b, {0, 1, 0}) == Approx(1.0));
  CHECK(weighted_objective({0.5, 16, -3}, b, {0, 0, 1}) == Approx(0.0));
  NormalizationBounds flat;
  flat.utopia = flat.nadir = {-0.5, 3, 4};
  CHECK(weighted_objective({-0.1, 9, 9}, flat, kEqualWeights) == 0.0);
}

TEST_CASE("weighted objective is monotone in each component") {
  testing::Rng rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 3000; ++rep) {
    NormalizationBounds b;
    for (int k = 0; k < 3; ++k) {
      b.utopia[k] = u(rng) * 5 - 2;
      b.nadir[k] = b.utopia[k] + 0.01 + u(rng) * 5;
    }
    const Weights w{u(rng) + 0.01, u(rng) + 0.01, u(rng) + 0.01};
    ObjectiveComponents f{u(rng) * 8 - 4, u(rng) * 8 - 4, u(rng) * 8 - 4};
    const double base = weighted_objective(f, b, w);
    CHECK(base >= 0.0);
    CHECK(base <= w[0] + w[1] + w[2] + 1e-12);
    for (Component c : kAllComponents) {
      ObjectiveComponents g = f;
      g[c] += u(rng) * 3;
      CHECK(weighted_objective(g, b, w) >= base - 1e-12);
    }
  }
}

TEST_CASE("loads conserve total work and ergonomic load") {
  testing::Rng rng(23);
  for (int rep = 0; rep < 10000; ++rep) {
    testing::InstanceShape shape;
    shape.tasks = testing::uniform(rng, 1, 15);
    shape.stations = testing::uniform(rng, 1, 4);
    shape.workers = shape.stations + testing::uniform(rng, 0, 4);
    shape.with_current = false;
    const Instance inst = testing::random_instance(rng, shape);
    const Configuration c =
        testing::random_configuration(rng, shape.tasks, shape.stations, shape.workers, 0.2);
    const WorkerLoads wl = worker_loads(c, inst);
    CHECK(std::accumulate(wl.loads.begin(), wl.loads.end(), 0) == inst.total_time());
    CHECK(std::accumulate(wl.ergo_loads.begin(), wl.ergo_loads.end(), 0) == inst.total_ergo());
  }
}

TEST_CASE("dispersion measures are scale invariant") {
  testing::Rng rng(29);
  std::uniform_real_distribution<double> value(0.1, 50.0), scale(1e-3, 1e3);
  for (int rep = 0; rep < 10000; ++rep) {
    std::vector<double> v(testing::uniform(rng, 1, 12));
    for (double& x : v) x = value(rng);
    const double lambda = scale(rng);
    std::vector<double> s = v;
    for (double& x : s) x *= lambda;
    CHECK(normalized_range(s) == Approx(normalized_range(v)).epsilon(1e-9));
    CHECK(coefficient_of_variation(s) == Approx(coefficient_of_variation(v)).epsilon(1e-9));
  }
}

TEST_CASE("report invariants") {
  testing::Rng rng(31);
  for (int rep = 0; rep < 1000; ++rep) {
    testing::InstanceShape shape;
    shape.tasks = testing::uniform(rng, 1, 10);
    shape.stations = testing::uniform(rng, 1, 3);
    shape.workers = shape.stations + testing::uniform(rng, 0, 3);
    const Instance inst = testing::random_instance(rng, shape);
    const Configuration c =
        testing::random_configuration(rng, shape.tasks, shape.stations, shape.workers, 0.3);
    const ObjectiveReport r = make_report(c, inst);
    for (std::size_t w = 0; w < r.loads.size(); ++w) {
      if (!r.counted[w]) continue;
      CHECK(r.l_min <= r.loads[w]);
      CHECK(r.loads[w] <= r.l_max);
      CHECK(r.h_min <= r.ergo_loads[w]);
      CHECK(r.ergo_loads[w] <= r.h_max);
    }
    CHECK(r.delta_l == r.l_max - r.l_min);
    CHECK(r.delta_h == r.h_max - r.h_min);
    const ObjectiveComponents f = r.components();
    const ObjectiveComponents g = testing::oracle_components(c, inst);
    CHECK(f.neg_msf == Approx(g.neg_msf).epsilon(1e-12));
    CHECK(f.delta_l == g.delta_l);
    CHECK(f.delta_h == g.delta_h);
  }
}

TEST_CASE("component names") {
  for (Component c : kAllComponents) CHECK(component_from_name(component_name(c)) == c);
  CHECK_THROWS(component_from_name("nope"));
}
