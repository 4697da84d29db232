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

#ifndef ALRB_METRICS_HPP
#define ALRB_METRICS_HPP

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "alrb/domain.hpp"

namespace alrb {

/// The three minimised objective components, in this fixed order.
enum class Component { NegMsf = 0, DeltaL = 1, DeltaH = 2 };
inline constexpr std::array<Component, 3> kAllComponents{Component::NegMsf, Component::DeltaL,
                                                         Component::DeltaH};
std::string_view component_name(Component c);
Component component_from_name(std::string_view name);

struct ObjectiveComponents {
  double neg_msf = -1.0;
  double delta_l = 0.0;
  double delta_h = 0.0;

  double operator[](Component c) const;
  double& operator[](Component c);
};

using Weights = std::array<double, 3>;
inline constexpr Weights kEqualWeights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

/// Utopia (best) and nadir (worst) value per component, minimisation sense.
struct NormalizationBounds {
  std::array<double, 3> utopia{-1.0, 0.0, 0.0};
  std::array<double, 3> nadir{-1.0, 0.0, 0.0};

  bool valid() const;
  /// Clamped normalised value of one component; 0 when the bounds coincide.
  double normalize(Component c, double value) const;
};

/// Fraction of task `task`'s former station mates that still share its
/// station in `proposed`. A task that was alone in `current` scores 1.
double similarity_factor(int task, const Configuration& current, const Configuration& proposed);

/// Mean similarity factor over all tasks.
double mean_similarity(const Configuration& current, const Configuration& proposed);

struct WorkerLoads {
  std::vector<int> loads;       // processing time per worker
  std::vector<int> ergo_loads;  // summed ergonomic index per worker
};

WorkerLoads worker_loads(const Configuration& proposed, const Instance& instance);

/// Workers that enter the dispersion measures: those assigned to a station,
/// whether or not they hold tasks.
std::vector<int> counted_workers(const Configuration& config);

struct LoadRanges {
  int delta_l = 0;
  int delta_h = 0;
};

/// max - min of each load vector. Throws std::invalid_argument when empty.
LoadRanges load_ranges(std::span<const int> loads, std::span<const int> ergo_loads);

/// (max - min) / mean. Throws std::invalid_argument unless mean > 0.
double normalized_range(std::span<const double> values);
/// Population standard deviation over mean. Same precondition.
double coefficient_of_variation(std::span<const double> values);

double weighted_objective(const ObjectiveComponents& f, const NormalizationBounds& bounds,
                          const Weights& weights);

struct ObjectiveReport {
  std::optional<double> msf;  // absent without a reference configuration
  std::vector<int> loads;
  std::vector<int> ergo_loads;
  std::vector<bool> counted;
  int l_max = 0, l_min = 0, h_max = 0, h_min = 0;
  int delta_l = 0, delta_h = 0;
  std::optional<double> weighted_normalized;

  ObjectiveComponents components() const;
};

/// Evaluates `proposed` against `instance.current` (when present). The
/// weighted objective is filled in only when `bounds` is given.
ObjectiveReport make_report(const Configuration& proposed, const Instance& instance,
                            const NormalizationBounds* bounds = nullptr,
                            const Weights& weights = kEqualWeights);

ObjectiveComponents evaluate_components(const Configuration& proposed, const Instance& instance);

/// Dispersion of the counted workers' loads.
struct Fairness {
  double wl_nr = 0.0;
  double wl_cv = 0.0;
  double el_nr = 0.0;
  double el_cv = 0.0;
};

Fairness fairness(const ObjectiveReport& report);

nlohmann::json report_to_json(const ObjectiveReport& report);

}  // namespace alrb

#endif  // ALRB_METRICS_HPP
