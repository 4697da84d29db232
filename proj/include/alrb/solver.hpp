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

#ifndef ALRB_SOLVER_HPP
#define ALRB_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alrb/domain.hpp"
#include "alrb/encoding.hpp"
#include "alrb/metrics.hpp"

namespace alrb {

using Seconds = std::chrono::duration<double>;

struct SolveProgress {
  std::int64_t nodes = 0;
  std::optional<double> incumbent;
  double bound = 0.0;
  double gap = 1.0;
  Seconds elapsed{0};
};

struct SolveOptions {
  Weights weights = kEqualWeights;
  Seconds time_limit{60.0};
  /// Stop once (objective - bound) / |objective| <= gap_target; 0 proves
  /// optimality.
  double gap_target = 0.0;
  bool require_nonempty_workers = false;
  /// Perturbs the order in which equally bounded children are tried.
  std::uint64_t random_seed = 0;
  /// Seconds between progress callbacks; 0 disables them.
  double progress_interval = 0.0;
  std::function<void(const SolveProgress&)> on_progress;
};

enum class SolveStatus { Optimal, FeasibleGapMet, FeasibleTimeout, Infeasible, NoSolutionTimeout };
std::string_view status_name(SolveStatus s);
SolveStatus status_from_name(std::string_view name);

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Configuration> incumbent;
  double objective = 0.0;    // +inf without incumbent
  double lower_bound = 0.0;  // +inf when proven infeasible
  double gap = 0.0;
  std::int64_t nodes_explored = 0;
  Seconds elapsed{0};

  bool has_incumbent() const { return incumbent.has_value(); }
};

/// The function being minimised. With `normalized` it is the clamped
/// utopia/nadir weighted sum; otherwise the plain weighted sum of the raw
/// components, which single-objective runs use.
struct Objective {
  Weights weights = kEqualWeights;
  NormalizationBounds bounds;
  bool normalized = true;

  double value(const ObjectiveComponents& f) const;
  /// Whether the component can change the objective value at all.
  bool active(Component c) const;

  static Objective weighted(const NormalizationBounds& bounds, const Weights& weights);
  static Objective single(Component c);
};

class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A search hit its time limit before finding any configuration.
class TimeLimitError : public std::runtime_error {
 public:
  explicit TimeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Branch-and-bound over tasks in topological order. Returns the minimum of
/// the normalised weighted objective over all semantically feasible
/// configurations with instance.num_workers workers, or the best incumbent and
/// a valid global bound when stopped by time or gap.
SolveResult solve(const Instance& instance, int new_cycle_time, const NormalizationBounds& bounds,
                  const SolveOptions& options);

/// Same search for an arbitrary objective; `options.weights` is ignored.
SolveResult solve_objective(const Instance& instance, int new_cycle_time,
                            const Objective& objective, const SolveOptions& options);

struct SingleObjectiveResult {
  Component which = Component::NegMsf;
  double min_value = 0.0;
  /// All three components evaluated at the optimum of `which`.
  ObjectiveComponents at_optimum;
  SolveResult result;
};

SingleObjectiveResult solve_single_objective(const Instance& instance, int new_cycle_time,
                                             Component which, const SolveOptions& options);

struct NormalizationRuns {
  NormalizationBounds bounds;
  std::vector<SingleObjectiveResult> runs;
};

/// One exact single-objective run per component with positive weight (the
/// similarity run needs a current configuration); utopia/nadir of each
/// component are the best/worst of its values over the runs' optima.
/// Components without a run get coincident bounds. Throws InfeasibleError, or
/// TimeLimitError when a run ends without any configuration.
NormalizationRuns compute_normalization_runs(const Instance& instance, int new_cycle_time,
                                             const SolveOptions& options);
NormalizationBounds compute_normalization(const Instance& instance, int new_cycle_time,
                                          const SolveOptions& options);

/// True iff some configuration with instance.num_workers workers is feasible.
/// Throws TimeLimitError when the search cannot decide in time.
bool has_feasible_configuration(const Instance& instance, int new_cycle_time,
                                const SolveOptions& options);

/// Smallest worker count >= max(|S|, ceil(sum tau / CT)) that admits a
/// feasible configuration, searched upwards. Throws InfeasibleError when no
/// count up to max(|T|, |S|) works.
int find_min_workers(const Instance& instance, int new_cycle_time, const SolveOptions& options);

/// Exhaustive oracle: evaluates every feasible (x, y, z) and returns the true
/// optimum (ties broken by enumeration order). Guarded to small instances.
SolveResult enumerate_optimal(const Instance& instance, int new_cycle_time,
                              const NormalizationBounds& bounds, const Weights& weights,
                              bool require_nonempty_workers = false);

SolveResult enumerate_optimal_objective(const Instance& instance, int new_cycle_time,
                                        const Objective& objective,
                                        bool require_nonempty_workers = false,
                                        bool parallel = true);

inline constexpr EnumerationGuard kOptimalGuard{8, 3, 4};

}  // namespace alrb

#endif  // ALRB_SOLVER_HPP
