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

// Exhaustive kernels: feasible-set enumeration under either encoding and the
// brute-force optimum used as the solver's oracle. Each has an OpenMP path
// split over task->worker maps and a serial path over the same candidates.

#include <algorithm>
#include <cstdint>
#include <limits>

#include <omp.h>

#include "alrb/encoding.hpp"
#include "alrb/solver.hpp"
#include "encoding_internal.hpp"

namespace alrb {
namespace {

std::int64_t power(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

void check_guard(const Instance& inst, const EnumerationGuard& guard, const char* what) {
  if (inst.num_tasks() > guard.max_tasks || inst.num_stations > guard.max_stations ||
      inst.num_workers > guard.max_workers) {
    throw SizeGuardError(std::string(what) + ": instance exceeds the enumeration guard (|T| <= " +
                         std::to_string(guard.max_tasks) + ", |S| <= " +
                         std::to_string(guard.max_stations) + ", |W| <= " +
                         std::to_string(guard.max_workers) + ")");
  }
}

/// Walks every candidate whose task->worker map has mixed-radix index `xi`.
/// Candidates are numbered consecutively across calls for deterministic
/// tie-breaking; z is pinned by the consistency rows where the worker holds a
/// station and free otherwise (those candidates are structurally invalid).
class CandidateWalker {
 public:
  explicit CandidateWalker(const Instance& inst, bool include_free)
      : n_(inst.num_tasks()),
        stations_(inst.num_stations),
        workers_(inst.num_workers),
        include_free_(include_free) {
    config_.task_station.assign(n_, 0);
    config_.task_worker.assign(n_, 0);
    config_.worker_station.assign(workers_, kUnassigned);
    y_count_ = power(stations_ + 1, workers_);
  }

  std::int64_t x_count() const { return power(workers_, n_); }

  template <class Visit>
  void walk(std::int64_t xi, Visit&& visit) {
    std::int64_t rest = xi;
    for (int i = 0; i < n_; ++i) {
      config_.task_worker[i] = static_cast<int>(rest % workers_);
      rest /= workers_;
    }
    for (std::int64_t yi = 0; yi < y_count_; ++yi) {
      rest = yi;
      for (int w = 0; w < workers_; ++w) {
        const int digit = static_cast<int>(rest % (stations_ + 1));
        rest /= stations_ + 1;
        config_.worker_station[w] = digit == 0 ? kUnassigned : digit - 1;
      }
      free_.clear();
      for (int i = 0; i < n_; ++i) {
        const int s = config_.worker_station[config_.task_worker[i]];
        if (s == kUnassigned) {
          free_.push_back(i);
        } else {
          config_.task_station[i] = s;
        }
      }
      if (!free_.empty() && !include_free_) continue;
      const std::int64_t z_count = power(stations_, static_cast<int>(free_.size()));
      for (std::int64_t zi = 0; zi < z_count; ++zi) {
        rest = zi;
        for (int i : free_) {
          config_.task_station[i] = static_cast<int>(rest % stations_);
          rest /= stations_;
        }
        visit(static_cast<const Configuration&>(config_), (xi * y_count_ + yi) * z_count + zi);
      }
    }
  }

 private:
  int n_, stations_, workers_;
  bool include_free_;
  std::int64_t y_count_ = 1;
  Configuration config_;
  std::vector<int> free_;
};

struct FeasibilityTest {
  const Instance& inst;
  int cycle_time;
  Encoding encoding;
  detail::ModelView view;

  FeasibilityTest(const Instance& i, int ct, Encoding e)
      : inst(i), cycle_time(ct), encoding(e), view(i.num_tasks(), i.num_stations, i.num_workers) {}

  bool operator()(const Configuration& c) {
    detail::FirstFailure structure;
    if (!detail::check_structure(c, inst, structure)) return false;
    view.load(c);
    return detail::feasible_view(view, inst, cycle_time, encoding);
  }
};

bool all_workers_busy(const Configuration& c) {
  std::vector<bool> busy(c.num_workers(), false);
  for (int w : c.task_worker) busy[w] = true;
  return std::all_of(busy.begin(), busy.end(), [](bool b) { return b; });
}

}  // namespace

std::vector<Configuration> enumerate_feasible_serial(const Instance& instance,
                                                     int new_cycle_time, Encoding encoding,
                                                     const EnumerationGuard& guard) {
  check_guard(instance, guard, "enumerate_feasible");
  std::vector<Configuration> out;
  CandidateWalker walker(instance, true);
  FeasibilityTest feasible(instance, new_cycle_time, encoding);
  for (std::int64_t xi = 0; xi < walker.x_count(); ++xi) {
    walker.walk(xi, [&](const Configuration& c, std::int64_t) {
      if (feasible(c)) out.push_back(c);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Configuration> enumerate_feasible(const Instance& instance, int new_cycle_time,
                                              Encoding encoding, const EnumerationGuard& guard) {
  check_guard(instance, guard, "enumerate_feasible");
  std::vector<Configuration> out;
  const std::int64_t x_count = CandidateWalker(instance, true).x_count();
#pragma omp parallel
  {
    std::vector<Configuration> local;
    CandidateWalker walker(instance, true);
    FeasibilityTest feasible(instance, new_cycle_time, encoding);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t xi = 0; xi < x_count; ++xi) {
      walker.walk(xi, [&](const Configuration& c, std::int64_t) {
        if (feasible(c)) local.push_back(c);
      });
    }
#pragma omp critical(alrb_enumerate_merge)
    out.insert(out.end(), std::make_move_iterator(local.begin()),
               std::make_move_iterator(local.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::int64_t index = std::numeric_limits<std::int64_t>::max();
  std::optional<Configuration> config;
  std::int64_t evaluated = 0;

  void offer(double v, std::int64_t idx, const Configuration& c) {
    if (v < value || (v == value && idx < index)) {
      value = v;
      index = idx;
      config = c;
    }
  }
  void merge(Best&& other) {
    evaluated += other.evaluated;
    if (other.config) offer(other.value, other.index, *other.config);
  }
};

}  // namespace

SolveResult enumerate_optimal_objective(const Instance& instance, int new_cycle_time,
                                        const Objective& objective,
                                        bool require_nonempty_workers, bool parallel) {
  check_guard(instance, kOptimalGuard, "enumerate_optimal");
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t x_count = CandidateWalker(instance, false).x_count();
  Best best;
#pragma omp parallel if (parallel)
  {
    Best local;
    CandidateWalker walker(instance, false);
    FeasibilityTest feasible(instance, new_cycle_time, Encoding::Semantic);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t xi = 0; xi < x_count; ++xi) {
      walker.walk(xi, [&](const Configuration& c, std::int64_t idx) {
        ++local.evaluated;
        if (!feasible(c)) return;
        if (require_nonempty_workers && !all_workers_busy(c)) return;
        local.offer(objective.value(evaluate_components(c, instance)), idx, c);
      });
    }
#pragma omp critical(alrb_optimal_merge)
    best.merge(std::move(local));
  }

  SolveResult r;
  r.nodes_explored = best.evaluated;
  r.elapsed = std::chrono::steady_clock::now() - start;
  if (!best.config) {
    r.status = SolveStatus::Infeasible;
    r.objective = r.lower_bound = std::numeric_limits<double>::infinity();
    return r;
  }
  r.status = SolveStatus::Optimal;
  r.incumbent = std::move(best.config);
  r.objective = r.lower_bound = best.value;
  r.gap = 0.0;
  return r;
}

SolveResult enumerate_optimal(const Instance& instance, int new_cycle_time,
                              const NormalizationBounds& bounds, const Weights& weights,
                              bool require_nonempty_workers) {
  return enumerate_optimal_objective(instance, new_cycle_time,
                                     Objective::weighted(bounds, weights),
                                     require_nonempty_workers);
}

}  // namespace alrb
