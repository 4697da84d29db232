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

#ifndef ALRB_SRC_ENCODING_INTERNAL_HPP
#define ALRB_SRC_ENCODING_INTERNAL_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alrb/encoding.hpp"

// Constraint rows written once and instantiated with three sinks: one that
// records every violation with a message, one that stops at the first, and
// one that only counts.
namespace alrb::detail {

struct Collect {
  ViolationList* out;
  bool done() const { return false; }
  template <class Detail>
  void report(ConstraintTag tag, std::initializer_list<int> idx, Detail&& detail) {
    out->entries.push_back({tag, std::vector<int>(idx), detail()});
  }
};

struct FirstFailure {
  bool failed = false;
  bool done() const { return failed; }
  template <class Detail>
  void report(ConstraintTag, std::initializer_list<int>, Detail&&) {
    failed = true;
  }
};

struct Count {
  std::size_t count = 0;
  bool done() const { return false; }
  template <class Detail>
  void report(ConstraintTag, std::initializer_list<int>, Detail&&) {
    ++count;
  }
};

/// Dense 0/1 matrices of one configuration plus the exactly derived s_s and
/// u_w. Buffers are reused across load() calls.
struct ModelView {
  int num_tasks;
  int num_stations;
  int num_workers;
  std::vector<std::uint8_t> x, y, z;
  std::vector<std::uint8_t> station_shared, worker_shared;

  ModelView(int t, int s, int w) : num_tasks(t), num_stations(s), num_workers(w) {}
  void load(const Configuration& c);

  int X(int i, int w) const { return x[i * num_workers + w]; }
  int Y(int s, int w) const { return y[s * num_workers + w]; }
  int Z(int i, int s) const { return z[i * num_stations + s]; }
};

inline std::string id(int zero_based) { return std::to_string(zero_based + 1); }

template <class Sink>
bool check_structure(const Configuration& c, const Instance& inst, Sink& sink) {
  const int n = inst.num_tasks();
  const int stations = inst.num_stations;
  const int workers = c.num_workers();
  if (c.num_tasks() != n || static_cast<int>(c.task_worker.size()) != n) {
    sink.report(ConstraintTag::Structure, {},
                [&] { return "task arrays must have " + std::to_string(n) + " entries"; });
    return false;
  }
  if (workers < 1) {
    sink.report(ConstraintTag::Structure, {}, [] { return std::string("no workers"); });
    return false;
  }
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    if (c.task_station[i] < 0 || c.task_station[i] >= stations) {
      sink.report(ConstraintTag::Structure, {i},
                  [&] { return "task " + id(i) + " has no valid station"; });
      ok = false;
    }
    if (c.task_worker[i] < 0 || c.task_worker[i] >= workers) {
      sink.report(ConstraintTag::Structure, {i},
                  [&] { return "task " + id(i) + " has no valid worker"; });
      ok = false;
    }
    if (sink.done()) return false;
  }
  for (int w = 0; w < workers; ++w) {
    const int s = c.worker_station[w];
    if (s != kUnassigned && (s < 0 || s >= stations)) {
      sink.report(ConstraintTag::Structure, {w},
                  [&] { return "worker " + id(w) + " has an invalid station"; });
      ok = false;
    }
  }
  if (!ok || sink.done()) return false;
  for (int i = 0; i < n; ++i) {
    const int w = c.task_worker[i];
    if (c.worker_station[w] == kUnassigned) {
      sink.report(ConstraintTag::Structure, {i, w}, [&] {
        return "task " + id(i) + " is held by worker " + id(w) + " who has no station";
      });
      ok = false;
      if (sink.done()) return false;
    }
  }
  return ok;
}

/// Rows shared verbatim by both encodings: consistency, staffing, precedence,
/// cycle time and the s_s / u_w definitions.
template <class Sink>
void check_common(const ModelView& m, const Instance& inst, int cycle_time, Sink& sink) {
  const int n = m.num_tasks, stations = m.num_stations, workers = m.num_workers;

  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < stations; ++s) {
      for (int w = 0; w < workers; ++w) {
        if (m.X(i, w) + m.Y(s, w) > 1 + m.Z(i, s)) {
          sink.report(ConstraintTag::Consistency, {i, s, w}, [&] {
            return "task " + id(i) + " is done by worker " + id(w) + " at station " + id(s) +
                   " but is placed elsewhere";
          });
          if (sink.done()) return;
        }
      }
    }
  }

  const WorkerBounds bounds = worker_bounds(workers, stations);
  std::vector<int> staff(stations, 0);
  for (int s = 0; s < stations; ++s) {
    for (int w = 0; w < workers; ++w) staff[s] += m.Y(s, w);
    if (staff[s] < bounds.lower || staff[s] > bounds.upper) {
      sink.report(ConstraintTag::Staffing, {s}, [&] {
        return "station " + id(s) + " has " + std::to_string(staff[s]) + " workers, allowed " +
               std::to_string(bounds.lower) + ".." + std::to_string(bounds.upper);
      });
      if (sink.done()) return;
    }
  }

  for (int j = 0; j < n; ++j) {
    for (int i : inst.precedence.predecessors(j)) {
      for (int s1 = 0; s1 < stations; ++s1) {
        for (int s2 = 0; s2 < s1; ++s2) {
          if (m.Z(i, s1) + m.Z(j, s2) > 1) {
            sink.report(ConstraintTag::Precedence, {i, j}, [&] {
              return "task " + id(j) + " at station " + id(s2) + " precedes its predecessor " +
                     id(i) + " at station " + id(s1);
            });
            if (sink.done()) return;
          }
        }
      }
    }
  }

  for (int w = 0; w < workers; ++w) {
    int load = 0;
    for (int i = 0; i < n; ++i) load += inst.tasks[i].processing_time * m.X(i, w);
    if (load > cycle_time) {
      sink.report(ConstraintTag::CycleTime, {w}, [&] {
        return "worker " + id(w) + " load " + std::to_string(load) + " exceeds cycle time " +
               std::to_string(cycle_time);
      });
      if (sink.done()) return;
    }
  }

  for (int s = 0; s < stations; ++s) {
    const int shared = m.station_shared[s];
    if (staff[s] < 2 * shared) {
      sink.report(ConstraintTag::SharedLower, {s},
                  [&] { return "station " + id(s) + " flagged shared with one worker"; });
    }
    if (staff[s] > 1 + (workers - 1) * shared) {
      sink.report(ConstraintTag::SharedUpper, {s},
                  [&] { return "station " + id(s) + " hosts several workers but is not shared"; });
    }
    if (sink.done()) return;
  }
  for (int w = 0; w < workers; ++w) {
    int weighted = 0;
    for (int s = 0; s < stations; ++s) weighted += m.station_shared[s] * m.Y(s, w);
    // u_w >= weighted / |S|, compared in integers.
    if (m.worker_shared[w] * stations < weighted) {
      sink.report(ConstraintTag::SharedWorker, {w},
                  [&] { return "worker " + id(w) + " in a shared station is not flagged"; });
      if (sink.done()) return;
    }
  }
}

/// Bilinear work-area row: a worker in a shared station must not hold both
/// internal and external tasks. Checked as the logical condition its big-M
/// form encodes.
template <class Sink>
void check_work_area_semantic(const ModelView& m, const Instance& inst, Sink& sink) {
  for (int w = 0; w < m.num_workers; ++w) {
    int internal = 0, external = 0;
    for (int i = 0; i < m.num_tasks; ++i) {
      if (!m.X(i, w)) continue;
      if (inst.tasks[i].area == Area::Internal) {
        ++internal;
      } else {
        ++external;
      }
    }
    if (m.worker_shared[w] && internal * external > 0) {
      sink.report(ConstraintTag::WorkArea, {w}, [&] {
        return "worker " + id(w) + " in a shared station holds " + std::to_string(internal) +
               " internal and " + std::to_string(external) + " external tasks";
      });
      if (sink.done()) return;
    }
  }
}

std::vector<std::pair<int, int>> coassign_pairs(const Instance& instance);

template <class Sink>
bool check_aux_shape(const ModelView& m, const LinearAux& aux, const Instance& inst,
                     Sink& sink) {
  bool ok = static_cast<int>(aux.area_flag.size()) == m.num_workers &&
            static_cast<int>(aux.solo_flag.size()) == m.num_stations;
  for (const auto& row : aux.solo_flag) ok = ok && static_cast<int>(row.size()) == m.num_workers;
  const auto pairs = coassign_pairs(inst);
  ok = ok && pairs.size() == aux.coassign.size();
  for (std::size_t k = 0; ok && k < pairs.size(); ++k) {
    const CoassignEntry& e = aux.coassign[k];
    ok = e.task == pairs[k].first && e.neighbor == pairs[k].second &&
         static_cast<int>(e.by_station.size()) == m.num_stations;
  }
  if (!ok) {
    sink.report(ConstraintTag::AuxShape, {},
                [] { return std::string("auxiliary arrays do not match the instance"); });
  }
  return ok;
}

template <class Sink>
void check_coassign(const ModelView& m, const LinearAux& aux, Sink& sink) {
  for (const CoassignEntry& e : aux.coassign) {
    const int i = e.task, j = e.neighbor;
    for (int s = 0; s < m.num_stations; ++s) {
      const int q = e.by_station[s] ? 1 : 0;
      if (q > m.Z(i, s)) {
        sink.report(ConstraintTag::CoassignA, {i, j, s}, [&] {
          return "q(" + id(i) + "," + id(j) + "," + id(s) + ") = 1 but task " + id(i) +
                 " is not at station " + id(s);
        });
      }
      if (q > m.Z(j, s)) {
        sink.report(ConstraintTag::CoassignB, {i, j, s}, [&] {
          return "q(" + id(i) + "," + id(j) + "," + id(s) + ") = 1 but task " + id(j) +
                 " is not at station " + id(s);
        });
      }
      if (q < m.Z(i, s) + m.Z(j, s) - 1) {
        sink.report(ConstraintTag::CoassignC, {i, j, s}, [&] {
          return "q(" + id(i) + "," + id(j) + "," + id(s) + ") = 0 but both tasks are there";
        });
      }
      if (sink.done()) return;
    }
  }
}

/// Rows that involve the auxiliaries of worker w only: the sole-worker
/// definition of l_sw and both per-task work-area families.
template <class Sink>
void check_worker_aux(const ModelView& m, const Instance& inst, int w, int c,
                      const std::vector<std::uint8_t>& solo, Sink& sink) {
  for (int s = 0; s < m.num_stations; ++s) {
    int staff = 0;
    for (int v = 0; v < m.num_workers; ++v) staff += m.Y(s, v);
    if (solo[s] > m.Y(s, w) || staff + (m.num_workers - 1) * solo[s] > m.num_workers) {
      sink.report(ConstraintTag::SoloDefinition, {s, w}, [&] {
        return "worker " + id(w) + " flagged alone at station " + id(s) + " which has " +
               std::to_string(staff) + " workers";
      });
      if (sink.done()) return;
    }
  }
  for (int i = 0; i < m.num_tasks; ++i) {
    const bool internal = inst.tasks[i].area == Area::Internal;
    for (int s = 0; s < m.num_stations; ++s) {
      const int slack = (internal ? c : 1 - c) + (1 - m.Y(s, w)) + (1 - m.Z(i, s)) + solo[s];
      if (m.X(i, w) > slack) {
        sink.report(internal ? ConstraintTag::WorkAreaInternal : ConstraintTag::WorkAreaExternal,
                    {i, s, w}, [&] {
                      return "worker " + id(w) + " at shared station " + id(s) + " has area " +
                             (c ? "internal" : "external") + " but holds " +
                             (internal ? "internal" : "external") + " task " + id(i);
                    });
        if (sink.done()) return;
      }
    }
  }
}

LinearAux shaped_aux(const ModelView& view, const Instance& instance);
std::optional<LinearAux> find_linear_aux_view(const ModelView& view, const Instance& instance,
                                              int new_cycle_time);
bool feasible_view(const ModelView& view, const Instance& instance, int new_cycle_time,
                   Encoding encoding);

}  // namespace alrb::detail

#endif  // ALRB_SRC_ENCODING_INTERNAL_HPP
