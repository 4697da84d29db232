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


#include "alrb/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace alrb {

void GeneratorParams::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("generator: " + m); };
  if (num_tasks < 1) fail("num_tasks must be >= 1");
  if (time_range.first < 1 || time_range.first > time_range.second) fail("bad time_range");
  if (ergo_range.first < 1 || ergo_range.second > 5 || ergo_range.first > ergo_range.second) {
    fail("bad ergo_range");
  }
  if (!(internal_probability >= 0.0 && internal_probability <= 1.0)) {
    fail("internal_probability must lie in [0, 1]");
  }
  if (max_predecessors < 0) fail("max_predecessors must be >= 0");
  if (target_cycle_time < 1) fail("target_cycle_time must be >= 1");
  if (baseline_cycle_times.empty()) fail("baseline_cycle_times is empty");
  for (int ct : baseline_cycle_times) {
    if (ct < 1) fail("baseline cycle times must be >= 1");
    if (ct == target_cycle_time) fail("target_cycle_time may not be a baseline cycle time");
  }
  if (num_stations < 0) fail("num_stations must be >= 0");
}

Instance generate_instance(const GeneratorParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> tau(params.time_range.first, params.time_range.second);
  std::uniform_int_distribution<int> ergo(params.ergo_range.first, params.ergo_range.second);
  std::bernoulli_distribution internal(params.internal_probability);

  Instance inst;
  inst.tasks.resize(params.num_tasks);
  for (Task& t : inst.tasks) {
    t.processing_time = tau(rng);
    t.ergonomic_index = ergo(rng);
    t.area = internal(rng) ? Area::Internal : Area::External;
  }
  inst.precedence = PrecedenceGraph(params.num_tasks);
  std::vector<int> earlier;
  for (int j = 1; j < params.num_tasks; ++j) {
    const int k =
        std::uniform_int_distribution<int>(0, std::min(params.max_predecessors, j))(rng);
    earlier.resize(j);
    std::iota(earlier.begin(), earlier.end(), 0);
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    for (int a = 0; a < k; ++a) {
      const int b = std::uniform_int_distribution<int>(a, j - 1)(rng);
      std::swap(earlier[a], earlier[b]);
      inst.precedence.add(j, earlier[a]);
    }
  }
  inst.cycle_time = params.target_cycle_time;
  if (params.num_stations > 0) {
    inst.num_stations = params.num_stations;
  } else {
    const double ratio =
        static_cast<double>(inst.total_time()) / (2.0 * params.target_cycle_time);
    inst.num_stations = std::max(2, static_cast<int>(std::lround(ratio)));
  }
  inst.num_workers = inst.num_stations;
  return inst;
}

Baseline generate_baseline_detailed(const Instance& instance, const GeneratorParams& params,
                                    const SolveOptions& options) {
  params.validate();
  if (instance.current) throw std::invalid_argument("generate_baseline: instance has a current configuration");

  // A separate stream so the cycle-time draw does not depend on the
  // instance draws.
  std::mt19937_64 rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<int> order = params.baseline_cycle_times;
  std::shuffle(order.begin(), order.end(), rng);

  SolveOptions base = options;
  base.weights = {0.0, 0.5, 0.5};
  Baseline out;
  for (int ct : order) {
    try {
      const int workers = find_min_workers(instance, ct, base);
      Instance sized = instance.with_workers(workers);
      const NormalizationBounds bounds = compute_normalization(sized, ct, base);
      SolveResult r = solve(sized, ct, bounds, base);
      if (!r.incumbent) throw InfeasibleError("no incumbent");
      sized.current = *r.incumbent;
      sized.current_cycle_time = ct;
      out.instance = std::move(sized);
      out.cycle_time = ct;
      out.workers = workers;
      out.result = std::move(r);
      return out;
    } catch (const InfeasibleError&) {
      out.rejected_cycle_times.push_back(ct);
    } catch (const TimeLimitError&) {
      out.rejected_cycle_times.push_back(ct);
    }
  }
  throw InfeasibleError("generate_baseline: no baseline cycle time admits a configuration");
}

Instance generate_baseline(const Instance& instance, const GeneratorParams& params,
                           const SolveOptions& options) {
  return generate_baseline_detailed(instance, params, options).instance;
}

}  // namespace alrb
