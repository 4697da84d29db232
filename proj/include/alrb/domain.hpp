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

#ifndef ALRB_DOMAIN_HPP
#define ALRB_DOMAIN_HPP

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

// Core data model of the multi-worker rebalancing problem.
//
// Tasks, stations and workers are addressed by dense 0-based indices in
// memory. Documents on disk use 1-based ids (worker station 0 = unassigned);
// the translation happens only in the (de)serialisation functions.
namespace alrb {

enum class Area : std::uint8_t { External = 0, Internal = 1 };

struct Task {
  int processing_time = 1;  // minutes
  int ergonomic_index = 1;  // 1 (low risk) .. 5 (high risk)
  Area area = Area::External;

  friend bool operator==(const Task&, const Task&) = default;
};

/// Immediate-predecessor sets, one per task.
class PrecedenceGraph {
 public:
  PrecedenceGraph() = default;
  explicit PrecedenceGraph(std::size_t num_tasks) : preds_(num_tasks) {}

  std::size_t size() const { return preds_.size(); }
  const std::vector<int>& predecessors(int task) const { return preds_.at(task); }

  /// Adds `pred` to the predecessor set of `task`; duplicates are ignored and
  /// each set is kept sorted.
  void add(int task, int pred);

  friend bool operator==(const PrecedenceGraph&, const PrecedenceGraph&) = default;

 private:
  std::vector<std::vector<int>> preds_;
};

inline constexpr int kUnassigned = -1;

/// A complete assignment: task -> station (z), task -> worker (x) and
/// worker -> station (y). The worker count is the length of `worker_station`,
/// which may differ from the instance's worker count for a recorded baseline.
struct Configuration {
  std::vector<int> task_station;
  std::vector<int> task_worker;
  std::vector<int> worker_station;  // kUnassigned for workers without station

  int num_tasks() const { return static_cast<int>(task_station.size()); }
  int num_workers() const { return static_cast<int>(worker_station.size()); }
  bool worker_assigned(int w) const { return worker_station[w] != kUnassigned; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Flags derived from a configuration: shared stations (s_s), workers in
/// shared stations (u_w), and the co-station neighbour sets of a reference
/// configuration (N_i, also TIB_i).
struct DerivedFlags {
  std::vector<bool> station_shared;
  std::vector<bool> worker_shared;
  std::vector<std::vector<int>> neighbor_sets;
};

DerivedFlags derive_flags(const Configuration& config, int num_stations,
                          const Configuration* reference = nullptr);

/// Tasks sharing a station with each task in `config`, excluding the task
/// itself, sorted ascending.
std::vector<std::vector<int>> co_station_sets(const Configuration& config);

struct Instance {
  std::vector<Task> tasks;
  PrecedenceGraph precedence;
  int num_stations = 1;
  int num_workers = 1;
  int cycle_time = 1;
  std::optional<Configuration> current;
  int current_cycle_time = 0;  // cycle time under which `current` was built

  int num_tasks() const { return static_cast<int>(tasks.size()); }
  int total_time() const;
  int total_ergo() const;

  /// Copy of this instance with a different worker count. The current
  /// configuration is kept as-is.
  Instance with_workers(int workers) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a document parses but violates one or more invariants; every
/// violation is listed.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class CycleError : public std::runtime_error {
 public:
  explicit CycleError(std::vector<int> cycle);
  /// Task indices along one cycle, each a predecessor of the next.
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

/// Kahn's algorithm with ascending-index tie-break. Throws CycleError.
std::vector<int> topological_order(const PrecedenceGraph& precedence);

struct WorkerBounds {
  int lower = 0;
  int upper = 0;
  friend bool operator==(const WorkerBounds&, const WorkerBounds&) = default;
};

/// Staffing bounds per station: (floor(W/S), ceil(W/S)).
WorkerBounds worker_bounds(int num_workers, int num_stations);

/// Every violated instance invariant, as human-readable strings. Empty when
/// the instance is valid.
std::vector<std::string> validate(const Instance& instance);

Instance load_instance(std::istream& source);
Instance load_instance_file(const std::string& path);
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);
void save_instance_file(const Instance& instance, const std::string& path);

/// Configuration arrays in document form (1-based ids, 0 = unassigned).
nlohmann::json configuration_to_json(const Configuration& config);
Configuration configuration_from_json(const nlohmann::json& doc);

}  // namespace alrb

#endif  // ALRB_DOMAIN_HPP
