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

#ifndef ALRB_ENCODING_HPP
#define ALRB_ENCODING_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alrb/domain.hpp"

// Two encodings of the rebalancing constraint set over binary assignment
// matrices x (task-worker), y (station-worker) and z (task-station):
//
//  * semantic: shared-station flags derived exactly and the work-area rule
//    checked as the bilinear product it is stated as;
//  * linearized: the work-area rule replaced by per-task inequalities over the
//    auxiliaries c_w (worker area) and l_sw (sole worker at station), and the
//    co-assignment product replaced by its three-inequality form.
//
// Both checkers walk the constraint families literally, index by index.
namespace alrb {

enum class ConstraintTag {
  Structure,         // malformed arrays, ids out of range, task on unassigned worker
  Consistency,       // x_iw + y_sw <= 1 + z_is
  Staffing,          // floor(W/S) <= sum_w y_sw <= ceil(W/S)
  Precedence,        // z_{i,s1} + z_{j,s2} <= 1 for i in pred(j), s1 > s2
  CycleTime,         // l_w <= CT
  SharedLower,       // sum_w y_sw >= 2 s_s
  SharedUpper,       // sum_w y_sw <= 1 + (|W|-1) s_s
  SharedWorker,      // u_w >= (1/|S|) sum_s s_s y_sw
  WorkArea,          // bilinear area product, shared workers only
  CoassignA,         // q_ijs <= z_is
  CoassignB,         // q_ijs <= z_js
  CoassignC,         // q_ijs >= z_is + z_js - 1
  SoloDefinition,    // l_sw <= y_sw and sum_w' y_sw' + (|W|-1) l_sw <= |W|
  WorkAreaInternal,  // x_iw <= c_w + (1-y_sw) + (1-z_is) + l_sw, a_i = 1
  WorkAreaExternal,  // x_iw <= (1-c_w) + (1-y_sw) + (1-z_is) + l_sw, a_i = 0
  AuxShape,          // auxiliary arrays do not match the instance
};

std::string_view constraint_name(ConstraintTag tag);

struct Violation {
  ConstraintTag tag;
  std::vector<int> indices;  // 0-based; meaning depends on the tag
  std::string detail;
};

struct ViolationList {
  std::vector<Violation> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  bool contains(ConstraintTag tag) const;
};

nlohmann::json violations_to_json(const ViolationList& list);

/// Co-assignment indicators for one ordered pair (i, j in N_i), by station.
struct CoassignEntry {
  int task = 0;
  int neighbor = 0;
  std::vector<bool> by_station;
};

struct LinearAux {
  std::vector<bool> area_flag;                // c_w, true = internal
  std::vector<std::vector<bool>> solo_flag;   // l_sw, indexed [station][worker]
  std::vector<CoassignEntry> coassign;        // q_ijs
};

enum class Encoding { Semantic, Linearized };
std::string_view encoding_name(Encoding e);

/// Every violated constraint of the semantic (quadratic) model.
ViolationList check_semantic(const Configuration& proposed, const Instance& instance,
                             int new_cycle_time);

/// Every violated constraint of the linearized model under the given
/// auxiliaries.
ViolationList check_linearized(const Configuration& proposed, const LinearAux& aux,
                               const Instance& instance, int new_cycle_time);

/// Auxiliaries of a semantically feasible configuration: l_sw = 1 iff w is
/// alone at s, c_w = area of w's tasks in a shared station (false otherwise),
/// q from z. Throws std::invalid_argument when `proposed` is infeasible.
LinearAux derive_aux(const Configuration& proposed, const Instance& instance,
                     int new_cycle_time);

/// Searches the auxiliary space for a witness that satisfies every
/// linearized constraint. Each auxiliary constraint involves the variables of
/// a single worker, so the search runs worker by worker over (c_w, l_.w).
std::optional<LinearAux> find_linear_aux(const Configuration& proposed,
                                         const Instance& instance, int new_cycle_time);

/// Auxiliaries that minimise the number of linearized violations; a witness
/// whenever one exists. Used for diagnostics.
LinearAux best_linear_aux(const Configuration& proposed, const Instance& instance,
                          int new_cycle_time);

bool is_feasible(const Configuration& proposed, const Instance& instance, int new_cycle_time,
                 Encoding encoding = Encoding::Semantic);

class SizeGuardError : public std::invalid_argument {
 public:
  explicit SizeGuardError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct EnumerationGuard {
  int max_tasks = 6;
  int max_stations = 3;
  int max_workers = 4;
};

/// All feasible (x, y, z) of the instance at `new_cycle_time` under one
/// encoding, sorted ascending. The candidate space is every task->worker and
/// worker->station map, with z fixed by the consistency rows wherever the
/// worker holds a station and free otherwise. The linearized encoding admits a
/// candidate iff some auxiliary assignment satisfies all of its rows.
///
/// OpenMP-parallel over the task->worker maps; the result does not depend on
/// the thread count.
std::vector<Configuration> enumerate_feasible(const Instance& instance, int new_cycle_time,
                                              Encoding encoding,
                                              const EnumerationGuard& guard = {});

/// Single-threaded reference for enumerate_feasible.
std::vector<Configuration> enumerate_feasible_serial(const Instance& instance,
                                                     int new_cycle_time, Encoding encoding,
                                                     const EnumerationGuard& guard = {});

}  // namespace alrb

#endif  // ALRB_ENCODING_HPP
