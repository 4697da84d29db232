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


#ifndef ALRB_IO_HPP
#define ALRB_IO_HPP

#include <optional>
#include <string>

#include "alrb/encoding.hpp"
#include "alrb/metrics.hpp"
#include "alrb/solver.hpp"

namespace alrb {

/// A solution document: the configuration in the same shape as an instance's
/// "current" block, its cycle time, the solver outcome and a report block.
struct Solution {
  std::optional<Configuration> configuration;
  int cycle_time = 0;
  std::optional<SolveStatus> status;
  double objective = 0.0;
  double lower_bound = 0.0;
  double gap = 0.0;
  std::int64_t nodes = 0;
  double elapsed_seconds = 0.0;
  std::optional<NormalizationBounds> bounds;
  Weights weights = kEqualWeights;
};

Solution solution_from_result(const SolveResult& result, int cycle_time,
                              const std::optional<NormalizationBounds>& bounds,
                              const Weights& weights);

/// The report block is recomputed from the configuration on every write.
nlohmann::json solution_to_json(const Solution& solution, const Instance& instance);
Solution solution_from_json(const nlohmann::json& doc);
Solution load_solution_file(const std::string& path);

nlohmann::json bounds_to_json(const NormalizationBounds& bounds);
NormalizationBounds bounds_from_json(const nlohmann::json& doc);

/// Violation report of `check`; "linearized" carries the auxiliary witness
/// when one exists.
nlohmann::json check_report(const Configuration& proposed, const Instance& instance,
                            int cycle_time, bool semantic, bool linearized);

nlohmann::json read_json_file(const std::string& path);
/// Writes via a temporary file and rename so readers never see a partial
/// document.
void write_json_file(const nlohmann::json& doc, const std::string& path);

}  // namespace alrb

#endif  // ALRB_IO_HPP
