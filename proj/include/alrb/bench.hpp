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


#ifndef ALRB_BENCH_HPP
#define ALRB_BENCH_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alrb/generator.hpp"
#include "alrb/io.hpp"
#include "alrb/metrics.hpp"
#include "alrb/solver.hpp"

namespace alrb {

enum class Scenario { OptimalStart, SuboptimalStart };
inline constexpr Scenario kScenarios[] = {Scenario::OptimalStart, Scenario::SuboptimalStart};
std::string_view scenario_name(Scenario s);
Scenario scenario_from_name(std::string_view name);
/// Gap target of the initial balancing solve for each scenario.
double scenario_gap(Scenario s);

enum class EncodingCheck { Semantic, Linearized, Both };
std::string_view encoding_check_name(EncodingCheck e);
EncodingCheck encoding_check_from_name(std::string_view name);

struct RebalanceOutcome {
  Instance sized;  // the instance at the rebalance worker count
  NormalizationBounds bounds;
  SolveResult result;
  std::optional<ObjectiveReport> report;
  Seconds total_time{0};  // sizing + normalization + solve
};

/// Sizes the workforce at the target cycle time, calibrates the
/// normalization and minimises the weighted objective against the attached
/// current configuration. Throws InfeasibleError naming the blocking
/// constraint family when no worker count works.
RebalanceOutcome run_rebalance(const Instance& instance, int target_cycle_time,
                               const SolveOptions& options);

/// Which constraint family blocks any configuration at `cycle_time`:
/// "cycle_time" when a single task is too long, "work_area" when dropping the
/// area rule makes the largest staffing feasible, "precedence" otherwise.
std::string diagnose_infeasibility(const Instance& instance, int cycle_time,
                                   const SolveOptions& options);

struct BenchmarkRecord {
  std::string instance_id;
  int size = 0;
  Scenario scenario = Scenario::OptimalStart;
  EncodingCheck encoding_checked = EncodingCheck::Both;
  Seconds solve_time{0};
  std::optional<SolveStatus> status;
  std::string error;
  std::optional<double> msf;
  std::optional<Fairness> fairness;
  std::optional<Fairness> baseline_fairness;
  int workers_used = 0;
  std::int64_t nodes = 0;
  bool encodings_agree = true;
  bool resumed = false;

  bool has_metrics() const { return fairness.has_value(); }
};

struct SuiteParams {
  std::vector<int> sizes{8, 10, 12, 14};
  int seeds_per_size = 10;
  std::uint64_t first_seed = 1;
  GeneratorParams generator;  // num_tasks and seed are overwritten per instance
};

struct ManifestEntry {
  std::string id;
  int size = 0;
  std::uint64_t seed = 0;
  int baseline_cycle_time = 0;
  int baseline_workers = 0;
  std::string optimal_file;     // relative to the manifest directory
  std::string suboptimal_file;
  const std::string& file(Scenario s) const {
    return s == Scenario::OptimalStart ? optimal_file : suboptimal_file;
  }
};

struct Discard {
  std::string id;
  int size = 0;
  std::uint64_t seed = 0;
  std::string reason;
};

struct Manifest {
  SuiteParams params;
  std::vector<ManifestEntry> instances;
  std::vector<Discard> discards;
};

nlohmann::json manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& doc);
Manifest load_manifest_file(const std::string& path);

/// Generates and baselines every (size, seed) of `params` into `dir`
/// (instances/ plus manifest.json). Instances whose baseline or target-time
/// rebalance is infeasible are discarded and logged. Generation runs on up to
/// `parallelism` threads.
Manifest generate_suite(const SuiteParams& params, const std::string& dir,
                        const SolveOptions& options, int parallelism = 1);

struct SuiteOptions {
  SolveOptions solve;
  EncodingCheck encoding = EncodingCheck::Both;
  int parallelism = 1;
  std::string out_dir = "bench_out";
};

/// One record per (instance, scenario). Solutions go to out_dir/solutions;
/// existing valid solution files are reused instead of re-solved. Writes
/// records.csv, cactus.csv, fairness.csv and robustness.csv to out_dir.
std::vector<BenchmarkRecord> run_suite(const Manifest& manifest, const std::string& manifest_dir,
                                       const SuiteOptions& options);

std::string records_csv(const std::vector<BenchmarkRecord>& records);
/// Solved records by nondecreasing solve time.
std::string cactus_csv(const std::vector<BenchmarkRecord>& records);
/// Means per size over optimal-start records with metrics.
std::string fairness_csv(const std::vector<BenchmarkRecord>& records);
/// Start and rebalanced metrics per scenario over instances where both
/// scenarios produced metrics.
std::string robustness_csv(const std::vector<BenchmarkRecord>& records);

}  // namespace alrb

#endif  // ALRB_BENCH_HPP
