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


#ifndef ALRB_GENERATOR_HPP
#define ALRB_GENERATOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "alrb/domain.hpp"
#include "alrb/solver.hpp"

namespace alrb {

struct GeneratorParams {
  int num_tasks = 10;
  std::pair<int, int> time_range{1, 7};
  std::pair<int, int> ergo_range{1, 5};
  double internal_probability = 0.5;
  int max_predecessors = 3;
  int target_cycle_time = 20;
  std::vector<int> baseline_cycle_times{17, 18, 19, 21, 22, 23};
  /// 0 picks max(2, round(sum tau / (2 CT))).
  int num_stations = 0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

/// Random tasks and precedence (predecessors of task j are drawn from tasks
/// before j). The worker count is a placeholder equal to the station count
/// and `current` is empty.
Instance generate_instance(const GeneratorParams& params);

struct Baseline {
  Instance instance;  // with `current` attached at `cycle_time`
  int cycle_time = 0;
  int workers = 0;
  SolveResult result;
  std::vector<int> rejected_cycle_times;
};

/// Builds a current configuration: picks a baseline cycle time from the
/// seed, sizes the workforce with find_min_workers and minimises the two
/// load ranges with weights (0, 1/2, 1/2). `options.gap_target` selects an
/// optimal (0) or early-stopped start; the cycle time drawn depends only on
/// params, so both starts of one instance share it. Cycle times that admit
/// no configuration are retried in turn before InfeasibleError is thrown.
Baseline generate_baseline_detailed(const Instance& instance, const GeneratorParams& params,
                                    const SolveOptions& options);

Instance generate_baseline(const Instance& instance, const GeneratorParams& params,
                           const SolveOptions& options);

}  // namespace alrb

#endif  // ALRB_GENERATOR_HPP
