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

#include "alrb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace alrb {
namespace {

double mean_of(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("dispersion of an empty set");
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (!(mean > 0.0)) throw std::invalid_argument("dispersion needs a positive mean");
  return mean;
}

std::pair<int, int> min_max(std::span<const int> v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

}  // namespace

std::string_view component_name(Component c) {
  switch (c) {
    case Component::NegMsf: return "neg_msf";
    case Component::DeltaL: return "delta_l";
    case Component::DeltaH: return "delta_h";
  }
  return "?";
}

Component component_from_name(std::string_view name) {
  for (Component c : kAllComponents) {
    if (component_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown objective component '" + std::string(name) + "'");
}

double ObjectiveComponents::operator[](Component c) const {
  switch (c) {
    case Component::NegMsf: return neg_msf;
    case Component::DeltaL: return delta_l;
    case Component::DeltaH: return delta_h;
  }
  return 0.0;
}

double& ObjectiveComponents::operator[](Component c) {
  switch (c) {
    case Component::NegMsf: return neg_msf;
    case Component::DeltaL: return delta_l;
    case Component::DeltaH: return delta_h;
  }
  return neg_msf;
}

bool NormalizationBounds::valid() const {
  for (int k = 0; k < 3; ++k) {
    if (!(utopia[k] <= nadir[k])) return false;
  }
  return true;
}

double NormalizationBounds::normalize(Component c, double value) const {
  const int k = static_cast<int>(c);
  const double span = nadir[k] - utopia[k];
  if (!(span > 0.0)) return 0.0;
  return std::clamp((value - utopia[k]) / span, 0.0, 1.0);
}

double similarity_factor(int task, const Configuration& current, const Configuration& proposed) {
  if (task < 0 || task >= current.num_tasks() || task >= proposed.num_tasks()) {
    throw std::out_of_range("similarity_factor: unknown task " + std::to_string(task + 1));
  }
  int before = 0;
  int kept = 0;
  for (int j = 0; j < current.num_tasks(); ++j) {
    if (j == task || current.task_station[j] != current.task_station[task]) continue;
    ++before;
    if (proposed.task_station[j] == proposed.task_station[task]) ++kept;
  }
  if (before == 0) return 1.0;
  return static_cast<double>(kept) / before;
}

double mean_similarity(const Configuration& current, const Configuration& proposed) {
  if (current.num_tasks() != proposed.num_tasks() || current.num_tasks() == 0) {
    throw std::invalid_argument("mean_similarity: configurations cover different task sets");
  }
  double sum = 0.0;
  for (int i = 0; i < current.num_tasks(); ++i) sum += similarity_factor(i, current, proposed);
  return sum / current.num_tasks();
}

WorkerLoads worker_loads(const Configuration& proposed, const Instance& instance) {
  WorkerLoads out;
  out.loads.assign(proposed.num_workers(), 0);
  out.ergo_loads.assign(proposed.num_workers(), 0);
  for (int i = 0; i < proposed.num_tasks(); ++i) {
    const int w = proposed.task_worker[i];
    out.loads.at(w) += instance.tasks[i].processing_time;
    out.ergo_loads.at(w) += instance.tasks[i].ergonomic_index;
  }
  return out;
}

std::vector<int> counted_workers(const Configuration& config) {
  std::vector<int> out;
  for (int w = 0; w < config.num_workers(); ++w) {
    if (config.worker_assigned(w)) out.push_back(w);
  }
  return out;
}

LoadRanges load_ranges(std::span<const int> loads, std::span<const int> ergo_loads) {
  if (loads.empty() || ergo_loads.empty()) {
    throw std::invalid_argument("load_ranges: no counted workers");
  }
  auto [l_lo, l_hi] = min_max(loads);
  auto [h_lo, h_hi] = min_max(ergo_loads);
  return {l_hi - l_lo, h_hi - h_lo};
}

double normalized_range(std::span<const double> values) {
  const double mean = mean_of(values);
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return (*hi - *lo) / mean;
}

double coefficient_of_variation(std::span<const double> values) {
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size())) / mean;
}

double weighted_objective(const ObjectiveComponents& f, const NormalizationBounds& bounds,
                          const Weights& weights) {
  double total = 0.0;
  for (Component c : kAllComponents) {
    const double w = weights[static_cast<int>(c)];
    if (w == 0.0) continue;
    total += w * bounds.normalize(c, f[c]);
  }
  return total;
}

ObjectiveComponents ObjectiveReport::components() const {
  return {-msf.value_or(1.0), static_cast<double>(delta_l), static_cast<double>(delta_h)};
}

ObjectiveReport make_report(const Configuration& proposed, const Instance& instance,
                            const NormalizationBounds* bounds, const Weights& weights) {
  ObjectiveReport r;
  if (instance.current) r.msf = mean_similarity(*instance.current, proposed);
  WorkerLoads wl = worker_loads(proposed, instance);
  r.loads = std::move(wl.loads);
  r.ergo_loads = std::move(wl.ergo_loads);
  r.counted.assign(proposed.num_workers(), false);
  std::vector<int> l, h;
  for (int w : counted_workers(proposed)) {
    r.counted[w] = true;
    l.push_back(r.loads[w]);
    h.push_back(r.ergo_loads[w]);
  }
  if (!l.empty()) {
    std::tie(r.l_min, r.l_max) = min_max(l);
    std::tie(r.h_min, r.h_max) = min_max(h);
    const LoadRanges ranges = load_ranges(l, h);
    r.delta_l = ranges.delta_l;
    r.delta_h = ranges.delta_h;
  }
  if (bounds != nullptr) r.weighted_normalized = weighted_objective(r.components(), *bounds, weights);
  return r;
}

ObjectiveComponents evaluate_components(const Configuration& proposed, const Instance& instance) {
  return make_report(proposed, instance).components();
}

Fairness fairness(const ObjectiveReport& report) {
  std::vector<double> l, h;
  for (std::size_t w = 0; w < report.loads.size(); ++w) {
    if (!report.counted[w]) continue;
    l.push_back(report.loads[w]);
    h.push_back(report.ergo_loads[w]);
  }
  return {normalized_range(l), coefficient_of_variation(l), normalized_range(h),
          coefficient_of_variation(h)};
}

nlohmann::json report_to_json(const ObjectiveReport& report) {
  nlohmann::json doc;
  doc["msf"] = report.msf ? nlohmann::json(*report.msf) : nlohmann::json(nullptr);
  doc["loads"] = report.loads;
  doc["ergo_loads"] = report.ergo_loads;
  std::vector<int> counted;
  for (std::size_t w = 0; w < report.counted.size(); ++w) {
    if (report.counted[w]) counted.push_back(static_cast<int>(w) + 1);
  }
  doc["counted_workers"] = counted;
  doc["l_max"] = report.l_max;
  doc["l_min"] = report.l_min;
  doc["h_max"] = report.h_max;
  doc["h_min"] = report.h_min;
  doc["delta_l"] = report.delta_l;
  doc["delta_h"] = report.delta_h;
  doc["weighted_normalized"] = report.weighted_normalized
                                   ? nlohmann::json(*report.weighted_normalized)
                                   : nlohmann::json(nullptr);
  return doc;
}

}  // namespace alrb
