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

#include "alrb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace alrb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Children whose bound is not below incumbent - kPruneTol are discarded.
constexpr double kPruneTol = 1e-10;
// Bounds are bucketed on this grid for node ordering only.
constexpr double kKeyQuantum = 1e-12;

double relative_gap(double objective, double bound) {
  if (!std::isfinite(objective)) return kInf;
  const double diff = std::max(0.0, objective - bound);
  return diff / std::max(std::abs(objective), 1e-10);
}

/// How many workers each station gets, and the canonical worker layout that
/// goes with it: station 0 owns workers [0, n_0), station 1 the next n_1, and
/// so on; the remaining workers have no station.
struct Staffing {
  std::vector<int> per_station;
  std::vector<int> first_worker;
  std::vector<int> station_of;  // per canonical worker, kUnassigned past `counted`
  int counted = 0;
};

std::vector<Staffing> staffing_patterns(int workers, int stations, bool all_assigned) {
  const WorkerBounds b = worker_bounds(workers, stations);
  std::vector<Staffing> out;
  std::vector<int> n(stations, b.lower);
  for (;;) {
    int sum = 0;
    for (int v : n) sum += v;
    if (sum > 0 && (all_assigned ? sum == workers : sum <= workers)) {
      Staffing p;
      p.per_station = n;
      p.station_of.assign(workers, kUnassigned);
      int k = 0;
      for (int s = 0; s < stations; ++s) {
        p.first_worker.push_back(k);
        for (int c = 0; c < n[s]; ++c) p.station_of[k++] = s;
      }
      p.counted = k;
      out.push_back(std::move(p));
    }
    int s = stations - 1;
    while (s >= 0 && n[s] == b.upper) n[s--] = b.lower;
    if (s < 0) break;
    ++n[s];
  }
  return out;
}

struct OpenNode {
  std::int64_t key;  // quantised bound
  double bound;
  int depth;
  std::uint64_t seq;
  int pattern;
  std::vector<std::uint8_t> path;  // canonical worker per task in search order
};

// Max-heap comparator: lowest bound first, then deepest, then newest.
struct NodeOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.key != b.key) return a.key > b.key;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq < b.seq;
  }
};

class Search {
 public:
  Search(const Instance& inst, int cycle_time, const Objective& objective,
         const SolveOptions& options)
      : inst_(inst),
        cycle_time_(cycle_time),
        objective_(objective),
        options_(options),
        num_tasks_(inst.num_tasks()),
        num_stations_(inst.num_stations),
        num_workers_(inst.num_workers),
        rng_(options.random_seed) {
    order_ = topological_order(inst.precedence);
    for (int t = 0; t < num_tasks_; ++t) {
      tau_.push_back(inst.tasks[t].processing_time);
      ergo_.push_back(inst.tasks[t].ergonomic_index);
      internal_.push_back(inst.tasks[t].area == Area::Internal ? 1 : 0);
    }
    total_time_ = inst.total_time();
    total_ergo_ = inst.total_ergo();

    use_msf_ = objective_.active(Component::NegMsf);
    use_l_ = objective_.active(Component::DeltaL);
    use_h_ = objective_.active(Component::DeltaH);
    if (use_msf_ && !inst.current) {
      throw std::invalid_argument("similarity objective needs a current configuration");
    }
    neighbors_.resize(num_tasks_);
    current_station_.assign(num_tasks_, kUnassigned);
    if (inst.current) {
      const auto sets = co_station_sets(*inst.current);
      for (int i = 0; i < num_tasks_; ++i) {
        current_station_[i] = inst.current->task_station[i];
        for (int j : sets[i]) {
          const double w =
              (1.0 / sets[i].size() + 1.0 / sets[j].size()) / static_cast<double>(num_tasks_);
          neighbors_[i].push_back({j, w});
        }
      }
    }
    patterns_ = staffing_patterns(num_workers_, num_stations_, options_.require_nonempty_workers);

    task_worker_.assign(num_tasks_, kUnassigned);
    task_station_.assign(num_tasks_, kUnassigned);
    est_.assign(num_tasks_, 0);
    load_.assign(num_workers_, 0);
    ergo_load_.assign(num_workers_, 0);
    n_internal_.assign(num_workers_, 0);
    n_external_.assign(num_workers_, 0);
    n_tasks_.assign(num_workers_, 0);
    used_.assign(num_stations_, 0);
  }

  SolveResult run();

 private:
  struct Child {
    double bound;
    int worker;
    int rank_station;
    int rank_load;
    std::uint64_t tie;
  };

  void reset(int pattern);
  void apply(int task, int worker);
  void undo(int task, int worker);
  void restore(const OpenNode& node);
  /// Lower bound of the current partial assignment, +inf when a propagation
  /// rule proves it cannot be completed.
  double bound();
  /// True when the leaf became the new incumbent.
  bool offer_leaf();
  void push(double bound, int depth, const std::vector<std::uint8_t>& path, int worker);
  bool out_of_time();
  void report_progress(double lb, bool force);

  const Instance& inst_;
  int cycle_time_;
  Objective objective_;
  const SolveOptions& options_;
  int num_tasks_, num_stations_, num_workers_;
  std::mt19937_64 rng_;

  std::vector<int> order_;
  std::vector<int> tau_, ergo_;
  std::vector<std::uint8_t> internal_;
  int total_time_ = 0, total_ergo_ = 0;
  std::vector<std::vector<std::pair<int, double>>> neighbors_;
  std::vector<int> current_station_;
  bool use_msf_ = false, use_l_ = false, use_h_ = false;
  std::vector<Staffing> patterns_;

  // Partial assignment.
  const Staffing* staffing_ = nullptr;
  int pattern_ = -1;
  int depth_ = 0;
  std::vector<std::uint8_t> path_;
  std::vector<int> task_worker_, task_station_, est_;
  std::vector<int> load_, ergo_load_, n_internal_, n_external_, n_tasks_, used_;
  double broken_ = 0.0;
  std::vector<double> broken_delta_;

  // Search bookkeeping.
  std::vector<OpenNode> heap_;
  std::uint64_t seq_ = 0;
  std::int64_t nodes_ = 0;
  std::optional<Configuration> incumbent_;
  double incumbent_value_ = kInf;
  std::chrono::steady_clock::time_point start_;
  std::chrono::steady_clock::time_point last_progress_;
  bool timed_out_ = false;
};

void Search::reset(int pattern) {
  pattern_ = pattern;
  staffing_ = &patterns_[pattern];
  depth_ = 0;
  path_.clear();
  std::fill(task_worker_.begin(), task_worker_.end(), kUnassigned);
  std::fill(task_station_.begin(), task_station_.end(), kUnassigned);
  std::fill(load_.begin(), load_.end(), 0);
  std::fill(ergo_load_.begin(), ergo_load_.end(), 0);
  std::fill(n_internal_.begin(), n_internal_.end(), 0);
  std::fill(n_external_.begin(), n_external_.end(), 0);
  std::fill(n_tasks_.begin(), n_tasks_.end(), 0);
  std::fill(used_.begin(), used_.end(), 0);
  broken_ = 0.0;
  broken_delta_.clear();
}

void Search::apply(int task, int worker) {
  const int s = staffing_->station_of[worker];
  task_worker_[task] = worker;
  task_station_[task] = s;
  load_[worker] += tau_[task];
  ergo_load_[worker] += ergo_[task];
  (internal_[task] ? n_internal_ : n_external_)[worker] += 1;
  if (n_tasks_[worker]++ == 0) ++used_[s];
  double delta = 0.0;
  for (auto [j, w] : neighbors_[task]) {
    if (task_station_[j] != kUnassigned && task_station_[j] != s && j != task) delta += w;
  }
  broken_ += delta;
  broken_delta_.push_back(delta);
  path_.push_back(static_cast<std::uint8_t>(worker));
  ++depth_;
}

void Search::undo(int task, int worker) {
  const int s = staffing_->station_of[worker];
  --depth_;
  path_.pop_back();
  broken_ -= broken_delta_.back();
  broken_delta_.pop_back();
  if (--n_tasks_[worker] == 0) --used_[s];
  (internal_[task] ? n_internal_ : n_external_)[worker] -= 1;
  ergo_load_[worker] -= ergo_[task];
  load_[worker] -= tau_[task];
  task_station_[task] = kUnassigned;
  task_worker_[task] = kUnassigned;
}

void Search::restore(const OpenNode& node) {
  reset(node.pattern);
  for (std::size_t d = 0; d < node.path.size(); ++d) apply(order_[d], node.path[d]);
}

double Search::bound() {
  const Staffing& st = *staffing_;
  const int counted = st.counted;

  // Earliest reachable station of every unplaced task.
  for (int d = depth_; d < num_tasks_; ++d) {
    const int t = order_[d];
    int e = 0;
    for (int p : inst_.precedence.predecessors(t)) {
      e = std::max(e, task_station_[p] != kUnassigned ? task_station_[p] : est_[p]);
    }
    est_[t] = e;
  }

  // Capacity per station suffix, split by area. A worker in a shared station
  // that already holds a task is locked to that task's area.
  auto locked_to = [&](int k) -> int {
    if (st.per_station[st.station_of[k]] < 2) return -1;
    if (n_internal_[k] > 0) return 1;
    if (n_external_[k] > 0) return 0;
    return -1;
  };
  std::vector<int> need(num_stations_ + 1, 0), need_int(num_stations_ + 1, 0),
      need_ext(num_stations_ + 1, 0);
  int remaining_tasks = 0;
  for (int d = depth_; d < num_tasks_; ++d) {
    const int t = order_[d];
    need[est_[t]] += tau_[t];
    (internal_[t] ? need_int : need_ext)[est_[t]] += tau_[t];
    ++remaining_tasks;
  }
  std::vector<int> have(num_stations_ + 1, 0), have_int(num_stations_ + 1, 0),
      have_ext(num_stations_ + 1, 0);
  for (int k = 0; k < counted; ++k) {
    const int s = st.station_of[k];
    const int slack = cycle_time_ - load_[k];
    const int lock = locked_to(k);
    have[s] += slack;
    if (lock != 0) have_int[s] += slack;
    if (lock != 1) have_ext[s] += slack;
  }
  for (int s = num_stations_ - 1; s >= 0; --s) {
    need[s] += need[s + 1];
    need_int[s] += need_int[s + 1];
    need_ext[s] += need_ext[s + 1];
    have[s] += have[s + 1];
    have_int[s] += have_int[s + 1];
    have_ext[s] += have_ext[s + 1];
    if (need[s] > have[s] || need_int[s] > have_int[s] || need_ext[s] > have_ext[s]) return kInf;
  }

  // Every unplaced task needs some worker that can still take it.
  for (int d = depth_; d < num_tasks_; ++d) {
    const int t = order_[d];
    bool fits = false;
    for (int k = 0; k < counted && !fits; ++k) {
      if (st.station_of[k] < est_[t] || load_[k] + tau_[t] > cycle_time_) continue;
      const int lock = locked_to(k);
      fits = lock < 0 || lock == internal_[t];
    }
    if (!fits) return kInf;
  }

  if (options_.require_nonempty_workers) {
    int empty = 0;
    for (int k = 0; k < counted; ++k) empty += n_tasks_[k] == 0 ? 1 : 0;
    if (empty > remaining_tasks) return kInf;
  }

  ObjectiveComponents lb;
  if (use_msf_) {
    double extra = 0.0;
    for (int d = depth_; d < num_tasks_; ++d) {
      const int j = order_[d];
      for (auto [i, w] : neighbors_[j]) {
        if (task_station_[i] != kUnassigned && est_[j] > task_station_[i]) extra += w;
      }
    }
    lb.neg_msf = -(1.0 - broken_ - extra);
  }
  if (use_l_ || use_h_) {
    int max_l = 0, max_h = 0, max_tau = 0, max_e = 0;
    for (int k = 0; k < counted; ++k) {
      max_l = std::max(max_l, load_[k]);
      max_h = std::max(max_h, ergo_load_[k]);
    }
    for (int d = depth_; d < num_tasks_; ++d) {
      max_tau = std::max(max_tau, tau_[order_[d]]);
      max_e = std::max(max_e, ergo_[order_[d]]);
    }
    // Highest final load any worker could still reach, per measure.
    int cap_l = std::numeric_limits<int>::max(), cap_h = std::numeric_limits<int>::max();
    for (int k = 0; k < counted; ++k) {
      const int s = st.station_of[k];
      const int lock = locked_to(k);
      const int slack = cycle_time_ - load_[k];
      int add_l = 0, add_h = 0;
      for (int d = depth_; d < num_tasks_; ++d) {
        const int t = order_[d];
        if (est_[t] > s || tau_[t] > slack || (lock >= 0 && lock != internal_[t])) continue;
        add_l += tau_[t];
        add_h += ergo_[t];
      }
      cap_l = std::min(cap_l, load_[k] + std::min(slack, add_l));
      cap_h = std::min(cap_h, ergo_load_[k] + add_h);
    }
    const int hi_l = std::max({max_l, (total_time_ + counted - 1) / counted, max_tau});
    const int lo_l = std::min(total_time_ / counted, cap_l);
    const int hi_h = std::max({max_h, (total_ergo_ + counted - 1) / counted, max_e});
    const int lo_h = std::min(total_ergo_ / counted, cap_h);
    lb.delta_l = std::max(0, hi_l - lo_l);
    lb.delta_h = std::max(0, hi_h - lo_h);
  }
  return objective_.value(lb);
}

bool Search::offer_leaf() {
  if (options_.require_nonempty_workers) {
    for (int k = 0; k < num_workers_; ++k) {
      if (n_tasks_[k] == 0) return false;
    }
  }
  Configuration c;
  c.task_station = task_station_;
  c.task_worker = task_worker_;
  c.worker_station = staffing_->station_of;
  const double v = objective_.value(evaluate_components(c, inst_));
  if (v < incumbent_value_ - kPruneTol) {
    incumbent_value_ = v;
    incumbent_ = std::move(c);
    return true;
  }
  return false;
}

void Search::push(double b, int depth, const std::vector<std::uint8_t>& path, int worker) {
  OpenNode node;
  node.bound = b;
  node.key = static_cast<std::int64_t>(std::llround(b / kKeyQuantum));
  node.depth = depth;
  node.seq = seq_++;
  node.pattern = pattern_;
  node.path = path;
  if (worker >= 0) node.path.push_back(static_cast<std::uint8_t>(worker));
  heap_.push_back(std::move(node));
  std::push_heap(heap_.begin(), heap_.end(), NodeOrder{});
}

bool Search::out_of_time() {
  if ((nodes_ & 255) != 0) return timed_out_;
  timed_out_ = std::chrono::steady_clock::now() - start_ >= options_.time_limit;
  return timed_out_;
}

void Search::report_progress(double lb, bool force) {
  if (!options_.on_progress || options_.progress_interval <= 0.0) return;
  const auto now = std::chrono::steady_clock::now();
  if (!force && Seconds(now - last_progress_).count() < options_.progress_interval) return;
  last_progress_ = now;
  SolveProgress p;
  p.nodes = nodes_;
  if (incumbent_) p.incumbent = incumbent_value_;
  p.bound = lb;
  p.gap = relative_gap(incumbent_value_, lb);
  p.elapsed = now - start_;
  options_.on_progress(p);
}

SolveResult Search::run() {
  start_ = last_progress_ = std::chrono::steady_clock::now();

  // The current configuration seeds the incumbent when it still fits.
  if (inst_.current && inst_.current->num_workers() == num_workers_ &&
      is_feasible(*inst_.current, inst_, cycle_time_)) {
    bool ok = true;
    if (options_.require_nonempty_workers) {
      std::vector<bool> busy(num_workers_, false);
      for (int w : inst_.current->task_worker) busy[w] = true;
      ok = std::all_of(busy.begin(), busy.end(), [](bool b) { return b; });
    }
    if (ok) {
      incumbent_ = *inst_.current;
      incumbent_value_ = objective_.value(evaluate_components(*inst_.current, inst_));
    }
  }

  for (int p = 0; p < static_cast<int>(patterns_.size()); ++p) {
    reset(p);
    const double b = bound();
    if (b < incumbent_value_ - kPruneTol) push(b, 0, path_, -1);
  }

  SolveResult result;
  double global_lb = kInf;
  bool gap_met = false;
  std::vector<Child> children;

  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), NodeOrder{});
    OpenNode node = std::move(heap_.back());
    heap_.pop_back();
    global_lb = node.bound;
    if (node.bound >= incumbent_value_ - kPruneTol) {
      heap_.clear();
      break;
    }
    if (incumbent_ && options_.gap_target > 0.0 &&
        relative_gap(incumbent_value_, node.bound) <= options_.gap_target) {
      heap_.push_back(std::move(node));
      gap_met = true;
      break;
    }
    restore(node);
    double current_bound = node.bound;

    // Dive: follow the best child, park its siblings.
    for (;;) {
      ++nodes_;
      if (out_of_time()) {
        global_lb = current_bound;
        if (!heap_.empty()) global_lb = std::min(global_lb, heap_.front().bound);
        break;
      }
      report_progress(std::min(current_bound, heap_.empty() ? kInf : heap_.front().bound), false);
      if (depth_ == num_tasks_) {
        // Every open node is bounded below by the popped one.
        if (offer_leaf() && options_.gap_target > 0.0 &&
            relative_gap(incumbent_value_, node.bound) <= options_.gap_target) {
          gap_met = true;
        }
        break;
      }
      const int task = order_[depth_];
      int earliest = 0;
      for (int p : inst_.precedence.predecessors(task)) {
        earliest = std::max(earliest, task_station_[p]);
      }
      children.clear();
      for (int s = earliest; s < num_stations_; ++s) {
        const int base = staffing_->first_worker[s];
        const int n_s = staffing_->per_station[s];
        const int limit = std::min(n_s, used_[s] + 1);
        for (int k = base; k < base + limit; ++k) {
          if (load_[k] + tau_[task] > cycle_time_) continue;
          if (n_s >= 2 && (internal_[task] ? n_external_[k] : n_internal_[k]) > 0) continue;
          apply(task, k);
          const double b = std::max(current_bound, bound());
          undo(task, k);
          if (!(b < incumbent_value_ - kPruneTol)) continue;
          Child c;
          c.bound = b;
          c.worker = k;
          c.rank_station = s == current_station_[task] ? 0 : 1;
          c.rank_load = load_[k];
          c.tie = options_.random_seed == 0 ? 0 : rng_();
          children.push_back(c);
        }
      }
      if (children.empty()) break;
      std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
        const auto ka = std::llround(a.bound / kKeyQuantum);
        const auto kb = std::llround(b.bound / kKeyQuantum);
        if (ka != kb) return ka < kb;
        if (a.rank_station != b.rank_station) return a.rank_station < b.rank_station;
        if (a.rank_load != b.rank_load) return a.rank_load < b.rank_load;
        if (a.tie != b.tie) return a.tie < b.tie;
        return a.worker < b.worker;
      });
      for (std::size_t c = children.size(); c-- > 1;) {
        push(children[c].bound, depth_ + 1, path_, children[c].worker);
      }
      apply(task, children.front().worker);
      current_bound = children.front().bound;
    }
    if (timed_out_ || gap_met) break;
  }

  result.nodes_explored = nodes_;
  result.elapsed = std::chrono::steady_clock::now() - start_;
  if (timed_out_) {
    result.status = incumbent_ ? SolveStatus::FeasibleTimeout : SolveStatus::NoSolutionTimeout;
    result.lower_bound = std::min(global_lb, incumbent_value_);
  } else if (gap_met && incumbent_value_ > global_lb + kPruneTol) {
    result.status = SolveStatus::FeasibleGapMet;
    result.lower_bound = global_lb;
  } else if (incumbent_) {
    result.status = SolveStatus::Optimal;
    result.lower_bound = incumbent_value_;
  } else {
    result.status = SolveStatus::Infeasible;
    result.lower_bound = kInf;
  }
  result.objective = incumbent_value_;
  result.incumbent = incumbent_;
  result.gap = incumbent_ ? relative_gap(incumbent_value_, result.lower_bound) : kInf;
  if (result.status == SolveStatus::Optimal) result.gap = 0.0;
  report_progress(result.lower_bound, true);
  return result;
}

}  // namespace

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleGapMet: return "feasible_gap_met";
    case SolveStatus::FeasibleTimeout: return "feasible_timeout";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NoSolutionTimeout: return "no_solution_timeout";
  }
  return "?";
}

SolveStatus status_from_name(std::string_view name) {
  for (SolveStatus s : {SolveStatus::Optimal, SolveStatus::FeasibleGapMet,
                        SolveStatus::FeasibleTimeout, SolveStatus::Infeasible,
                        SolveStatus::NoSolutionTimeout}) {
    if (status_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown solve status '" + std::string(name) + "'");
}

double Objective::value(const ObjectiveComponents& f) const {
  if (normalized) return weighted_objective(f, bounds, weights);
  double total = 0.0;
  for (Component c : kAllComponents) {
    const double w = weights[static_cast<int>(c)];
    if (w != 0.0) total += w * f[c];
  }
  return total;
}

bool Objective::active(Component c) const {
  const int k = static_cast<int>(c);
  if (weights[k] == 0.0) return false;
  return !normalized || bounds.nadir[k] > bounds.utopia[k];
}

Objective Objective::weighted(const NormalizationBounds& bounds, const Weights& weights) {
  return {weights, bounds, true};
}

Objective Objective::single(Component c) {
  Objective o;
  o.weights = {0.0, 0.0, 0.0};
  o.weights[static_cast<int>(c)] = 1.0;
  o.normalized = false;
  return o;
}

SolveResult solve_objective(const Instance& instance, int new_cycle_time,
                            const Objective& objective, const SolveOptions& options) {
  if (options.time_limit.count() <= 0.0) throw std::invalid_argument("time_limit must be > 0");
  for (double w : objective.weights) {
    if (w < 0.0) throw std::invalid_argument("weights must be nonnegative");
  }
  Search search(instance, new_cycle_time, objective, options);
  return search.run();
}

SolveResult solve(const Instance& instance, int new_cycle_time, const NormalizationBounds& bounds,
                  const SolveOptions& options) {
  if (!bounds.valid()) throw std::invalid_argument("normalization bounds need utopia <= nadir");
  return solve_objective(instance, new_cycle_time, Objective::weighted(bounds, options.weights),
                         options);
}

SingleObjectiveResult solve_single_objective(const Instance& instance, int new_cycle_time,
                                             Component which, const SolveOptions& options) {
  SingleObjectiveResult out;
  out.which = which;
  out.result = solve_objective(instance, new_cycle_time, Objective::single(which), options);
  if (out.result.incumbent) {
    out.min_value = out.result.objective;
    out.at_optimum = evaluate_components(*out.result.incumbent, instance);
  } else {
    out.min_value = kInf;
  }
  return out;
}

NormalizationRuns compute_normalization_runs(const Instance& instance, int new_cycle_time,
                                             const SolveOptions& options) {
  SolveOptions exact = options;
  exact.gap_target = 0.0;
  NormalizationRuns out;
  for (Component c : kAllComponents) {
    if (options.weights[static_cast<int>(c)] <= 0.0) continue;
    if (c == Component::NegMsf && !instance.current) continue;
    SingleObjectiveResult run = solve_single_objective(instance, new_cycle_time, c, exact);
    if (run.result.status == SolveStatus::NoSolutionTimeout) {
      throw TimeLimitError(std::string("the ") + std::string(component_name(c)) +
                           " run found no configuration within the time limit");
    }
    if (!run.result.incumbent) {
      throw InfeasibleError(std::string("no feasible configuration for the ") +
                            std::string(component_name(c)) + " run (" +
                            std::string(status_name(run.result.status)) + ")");
    }
    out.runs.push_back(std::move(run));
  }
  for (Component c : kAllComponents) {
    const int k = static_cast<int>(c);
    if (out.runs.empty()) break;
    double lo = kInf, hi = -kInf;
    bool has_run = false;
    for (const auto& run : out.runs) {
      lo = std::min(lo, run.at_optimum[c]);
      hi = std::max(hi, run.at_optimum[c]);
      has_run = has_run || run.which == c;
    }
    if (!has_run) lo = hi;  // component not optimised: leave it inert
    out.bounds.utopia[k] = lo;
    out.bounds.nadir[k] = hi;
  }
  return out;
}

NormalizationBounds compute_normalization(const Instance& instance, int new_cycle_time,
                                          const SolveOptions& options) {
  return compute_normalization_runs(instance, new_cycle_time, options).bounds;
}

bool has_feasible_configuration(const Instance& instance, int new_cycle_time,
                                const SolveOptions& options) {
  Objective flat;
  flat.weights = {0.0, 0.0, 0.0};
  const SolveResult r = solve_objective(instance, new_cycle_time, flat, options);
  if (r.status == SolveStatus::NoSolutionTimeout) {
    throw TimeLimitError("feasibility search timed out without a configuration");
  }
  return r.has_incumbent();
}

int find_min_workers(const Instance& instance, int new_cycle_time, const SolveOptions& options) {
  if (instance.num_tasks() < 1) throw std::invalid_argument("find_min_workers: no tasks");
  const int by_capacity = (instance.total_time() + new_cycle_time - 1) / new_cycle_time;
  const int start = std::max(instance.num_stations, by_capacity);
  const int stop = std::max(instance.num_tasks(), instance.num_stations);
  for (int w = start; w <= stop; ++w) {
    if (has_feasible_configuration(instance.with_workers(w), new_cycle_time, options)) return w;
  }
  throw InfeasibleError("no worker count in " + std::to_string(start) + ".." +
                        std::to_string(stop) + " admits a feasible configuration at cycle time " +
                        std::to_string(new_cycle_time));
}

}  // namespace alrb
