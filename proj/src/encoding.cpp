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

#include "alrb/encoding.hpp"

#include <algorithm>
#include <string>

#include "encoding_internal.hpp"

namespace alrb {

std::string_view constraint_name(ConstraintTag tag) {
  switch (tag) {
    case ConstraintTag::Structure: return "structure";
    case ConstraintTag::Consistency: return "consistency";
    case ConstraintTag::Staffing: return "staffing";
    case ConstraintTag::Precedence: return "precedence";
    case ConstraintTag::CycleTime: return "cycle_time";
    case ConstraintTag::SharedLower: return "shared_lower";
    case ConstraintTag::SharedUpper: return "shared_upper";
    case ConstraintTag::SharedWorker: return "shared_worker";
    case ConstraintTag::WorkArea: return "work_area";
    case ConstraintTag::CoassignA: return "coassign_a";
    case ConstraintTag::CoassignB: return "coassign_b";
    case ConstraintTag::CoassignC: return "coassign_c";
    case ConstraintTag::SoloDefinition: return "solo_definition";
    case ConstraintTag::WorkAreaInternal: return "work_area_internal";
    case ConstraintTag::WorkAreaExternal: return "work_area_external";
    case ConstraintTag::AuxShape: return "aux_shape";
  }
  return "?";
}

std::string_view encoding_name(Encoding e) {
  return e == Encoding::Semantic ? "semantic" : "linearized";
}

bool ViolationList::contains(ConstraintTag tag) const {
  return std::any_of(entries.begin(), entries.end(),
                     [tag](const Violation& v) { return v.tag == tag; });
}

nlohmann::json violations_to_json(const ViolationList& list) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Violation& v : list.entries) {
    std::vector<int> ids;
    for (int i : v.indices) ids.push_back(i + 1);
    arr.push_back({{"constraint", std::string(constraint_name(v.tag))},
                   {"indices", ids},
                   {"detail", v.detail}});
  }
  return arr;
}

namespace detail {

void ModelView::load(const Configuration& c) {
  x.assign(static_cast<std::size_t>(num_tasks) * num_workers, 0);
  y.assign(static_cast<std::size_t>(num_stations) * num_workers, 0);
  z.assign(static_cast<std::size_t>(num_tasks) * num_stations, 0);
  for (int i = 0; i < num_tasks; ++i) {
    x[i * num_workers + c.task_worker[i]] = 1;
    z[i * num_stations + c.task_station[i]] = 1;
  }
  for (int w = 0; w < num_workers; ++w) {
    if (c.worker_station[w] != kUnassigned) y[c.worker_station[w] * num_workers + w] = 1;
  }
  station_shared.assign(num_stations, 0);
  for (int s = 0; s < num_stations; ++s) {
    int count = 0;
    for (int w = 0; w < num_workers; ++w) count += Y(s, w);
    station_shared[s] = count >= 2 ? 1 : 0;
  }
  worker_shared.assign(num_workers, 0);
  for (int w = 0; w < num_workers; ++w) {
    for (int s = 0; s < num_stations; ++s) {
      if (Y(s, w) && station_shared[s]) worker_shared[w] = 1;
    }
  }
}

std::vector<std::pair<int, int>> coassign_pairs(const Instance& instance) {
  std::vector<std::pair<int, int>> pairs;
  if (!instance.current) return pairs;
  const auto sets = co_station_sets(*instance.current);
  for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
    for (int j : sets[i]) pairs.emplace_back(i, j);
  }
  return pairs;
}

}  // namespace detail

using detail::Collect;
using detail::FirstFailure;
using detail::ModelView;

ViolationList check_semantic(const Configuration& proposed, const Instance& instance,
                             int new_cycle_time) {
  ViolationList out;
  Collect sink{&out};
  if (!detail::check_structure(proposed, instance, sink)) return out;
  ModelView view(instance.num_tasks(), instance.num_stations, proposed.num_workers());
  view.load(proposed);
  detail::check_common(view, instance, new_cycle_time, sink);
  detail::check_work_area_semantic(view, instance, sink);
  return out;
}

ViolationList check_linearized(const Configuration& proposed, const LinearAux& aux,
                               const Instance& instance, int new_cycle_time) {
  ViolationList out;
  Collect sink{&out};
  if (!detail::check_structure(proposed, instance, sink)) return out;
  ModelView view(instance.num_tasks(), instance.num_stations, proposed.num_workers());
  if (!detail::check_aux_shape(view, aux, instance, sink)) return out;
  view.load(proposed);
  detail::check_common(view, instance, new_cycle_time, sink);
  detail::check_coassign(view, aux, sink);
  for (int w = 0; w < view.num_workers; ++w) {
    std::vector<std::uint8_t> solo(view.num_stations);
    for (int s = 0; s < view.num_stations; ++s) solo[s] = aux.solo_flag[s][w] ? 1 : 0;
    detail::check_worker_aux(view, instance, w, aux.area_flag[w] ? 1 : 0, solo, sink);
  }
  return out;
}

LinearAux derive_aux(const Configuration& proposed, const Instance& instance,
                     int new_cycle_time) {
  const ViolationList v = check_semantic(proposed, instance, new_cycle_time);
  if (!v.empty()) {
    throw std::invalid_argument("derive_aux: configuration is infeasible (" +
                                std::string(constraint_name(v.entries.front().tag)) + ": " +
                                v.entries.front().detail + ")");
  }
  ModelView view(instance.num_tasks(), instance.num_stations, proposed.num_workers());
  view.load(proposed);
  LinearAux aux = detail::shaped_aux(view, instance);
  for (int w = 0; w < view.num_workers; ++w) {
    const int s = proposed.worker_station[w];
    if (s == kUnassigned) continue;
    if (!view.station_shared[s]) {
      aux.solo_flag[s][w] = true;
      continue;
    }
    for (int i = 0; i < view.num_tasks; ++i) {
      if (view.X(i, w) && instance.tasks[i].area == Area::Internal) aux.area_flag[w] = true;
    }
  }
  return aux;
}

namespace {

// Per-worker search over (c_w, l_1w .. l_Sw). With `minimise` the combination
// with fewest violations wins; otherwise the first violation-free one.
bool search_worker_aux(const ModelView& view, const Instance& instance, int w, bool minimise,
                       LinearAux& aux) {
  const int combos = 1 << (1 + view.num_stations);
  std::vector<std::uint8_t> solo(view.num_stations);
  int best = -1;
  std::size_t best_count = 0;
  for (int combo = 0; combo < combos; ++combo) {
    for (int s = 0; s < view.num_stations; ++s) solo[s] = (combo >> (1 + s)) & 1;
    const int c = combo & 1;
    std::size_t count = 0;
    if (minimise) {
      detail::Count sink;
      detail::check_worker_aux(view, instance, w, c, solo, sink);
      count = sink.count;
    } else {
      FirstFailure sink;
      detail::check_worker_aux(view, instance, w, c, solo, sink);
      count = sink.failed ? 1 : 0;
    }
    if (best < 0 || count < best_count) {
      best = combo;
      best_count = count;
    }
    if (count == 0) break;
  }
  aux.area_flag[w] = (best & 1) != 0;
  for (int s = 0; s < view.num_stations; ++s) aux.solo_flag[s][w] = ((best >> (1 + s)) & 1) != 0;
  return best_count == 0;
}

}  // namespace

std::optional<LinearAux> find_linear_aux(const Configuration& proposed,
                                         const Instance& instance, int new_cycle_time) {
  FirstFailure structure;
  if (!detail::check_structure(proposed, instance, structure)) return std::nullopt;
  ModelView view(instance.num_tasks(), instance.num_stations, proposed.num_workers());
  view.load(proposed);
  return detail::find_linear_aux_view(view, instance, new_cycle_time);
}

namespace detail {

std::optional<LinearAux> find_linear_aux_view(const ModelView& view, const Instance& instance,
                                              int new_cycle_time) {
  FirstFailure common;
  check_common(view, instance, new_cycle_time, common);
  if (common.failed) return std::nullopt;
  LinearAux aux = shaped_aux(view, instance);
  FirstFailure q;
  check_coassign(view, aux, q);
  if (q.failed) return std::nullopt;
  for (int w = 0; w < view.num_workers; ++w) {
    if (!search_worker_aux(view, instance, w, false, aux)) return std::nullopt;
  }
  return aux;
}

LinearAux shaped_aux(const ModelView& view, const Instance& instance) {
  LinearAux aux;
  aux.area_flag.assign(view.num_workers, false);
  aux.solo_flag.assign(view.num_stations, std::vector<bool>(view.num_workers, false));
  for (auto [i, j] : coassign_pairs(instance)) {
    CoassignEntry e{i, j, std::vector<bool>(view.num_stations, false)};
    if (!view.z.empty()) {
      for (int s = 0; s < view.num_stations; ++s) e.by_station[s] = view.Z(i, s) && view.Z(j, s);
    }
    aux.coassign.push_back(std::move(e));
  }
  return aux;
}

}  // namespace detail

LinearAux best_linear_aux(const Configuration& proposed, const Instance& instance,
                          int /*new_cycle_time*/) {
  ModelView view(instance.num_tasks(), instance.num_stations, proposed.num_workers());
  FirstFailure structure;
  if (!detail::check_structure(proposed, instance, structure)) {
    return detail::shaped_aux(view, instance);
  }
  view.load(proposed);
  LinearAux aux = detail::shaped_aux(view, instance);
  for (int w = 0; w < view.num_workers; ++w) search_worker_aux(view, instance, w, true, aux);
  return aux;
}

bool is_feasible(const Configuration& proposed, const Instance& instance, int new_cycle_time,
                 Encoding encoding) {
  FirstFailure structure;
  if (!detail::check_structure(proposed, instance, structure)) return false;
  ModelView view(instance.num_tasks(), instance.num_stations, proposed.num_workers());
  view.load(proposed);
  return detail::feasible_view(view, instance, new_cycle_time, encoding);
}

namespace detail {

bool feasible_view(const ModelView& view, const Instance& instance, int new_cycle_time,
                   Encoding encoding) {
  if (encoding == Encoding::Linearized) {
    return find_linear_aux_view(view, instance, new_cycle_time).has_value();
  }
  FirstFailure sink;
  check_common(view, instance, new_cycle_time, sink);
  if (sink.failed) return false;
  check_work_area_semantic(view, instance, sink);
  return !sink.failed;
}

}  // namespace detail

}  // namespace alrb
