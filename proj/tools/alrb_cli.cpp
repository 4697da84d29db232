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


// alrb: generate, solve, check and benchmark assembly line rebalancing
// instances.
//
// Exit codes: 0 ok, 1 infeasible, 2 invalid input, 3 time limit without a
// configuration.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alrb/bench.hpp"
#include "alrb/domain.hpp"
#include "alrb/generator.hpp"
#include "alrb/io.hpp"
#include "alrb/metrics.hpp"
#include "alrb/solver.hpp"

namespace {

using namespace alrb;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInvalidInput = 2;
constexpr int kTimeLimit = 3;

struct SolveFlags {
  std::string instance;
  std::string out;
  int cycle_time = 0;
  std::vector<double> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double time_limit = 60.0;
  double gap = 0.0;
  std::uint64_t seed = 0;
  int workers = 0;
  bool size_workers = false;
  bool nonempty = false;
  double progress = 0.0;
};

void add_solver_flags(CLI::App* cmd, double& time_limit, std::uint64_t& seed) {
  cmd->add_option("--time-limit", time_limit, "Seconds per solve")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", seed, "Tie-break seed");
}

void print_progress(const SolveProgress& p) {
  std::fprintf(stderr, "nodes=%lld incumbent=%s bound=%.6g gap=%.4g elapsed=%.2fs\n",
               static_cast<long long>(p.nodes),
               p.incumbent ? std::to_string(*p.incumbent).c_str() : "-", p.bound, p.gap,
               p.elapsed.count());
}

void emit(const nlohmann::json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json_file(doc, path);
  }
}

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Infeasible: return kInfeasible;
    case SolveStatus::NoSolutionTimeout: return kTimeLimit;
    default: return kOk;
  }
}

int run_solve(const SolveFlags& f) {
  Instance inst = load_instance_file(f.instance);
  const int ct = f.cycle_time > 0 ? f.cycle_time : inst.cycle_time;
  SolveOptions o;
  if (f.weights.size() != 3) throw std::invalid_argument("--weights needs three values");
  o.weights = {f.weights[0], f.weights[1], f.weights[2]};
  o.time_limit = Seconds(f.time_limit);
  o.gap_target = f.gap;
  o.random_seed = f.seed;
  o.require_nonempty_workers = f.nonempty;
  if (f.progress > 0.0) {
    o.progress_interval = f.progress;
    o.on_progress = print_progress;
  }
  if (f.gap < 0.0 || f.gap > 1.0) throw std::invalid_argument("--gap must lie in [0, 1]");
  if (!inst.current && o.weights[0] > 0.0) {
    throw std::invalid_argument("instance has no current configuration; set the similarity weight to 0");
  }
  if (f.workers > 0) inst = inst.with_workers(f.workers);
  if (f.size_workers) inst = inst.with_workers(find_min_workers(inst, ct, o));
  if (inst.num_workers < inst.num_stations) {
    throw std::invalid_argument("worker count below station count");
  }
  const NormalizationBounds bounds = compute_normalization(inst, ct, o);
  const SolveResult r = solve(inst, ct, bounds, o);
  emit(solution_to_json(solution_from_result(r, ct, bounds, o.weights), inst), f.out);
  std::fprintf(stderr, "%s objective=%.9g bound=%.9g gap=%.4g nodes=%lld %.3fs\n",
               std::string(status_name(r.status)).c_str(), r.objective, r.lower_bound, r.gap,
               static_cast<long long>(r.nodes_explored), r.elapsed.count());
  return exit_for(r.status);
}

struct Loaded {
  Instance instance;
  Solution solution;
};

Loaded load_pair(const std::string& instance_path, const std::string& solution_path) {
  Loaded l{load_instance_file(instance_path), load_solution_file(solution_path)};
  if (!l.solution.configuration) throw std::invalid_argument("solution has no configuration");
  const Configuration& c = *l.solution.configuration;
  if (c.num_tasks() != l.instance.num_tasks()) {
    throw std::invalid_argument("solution and instance disagree on the number of tasks");
  }
  l.instance = l.instance.with_workers(c.num_workers());
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-worker assembly line rebalancing"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a baselined instance suite");
  std::string gen_out;
  alrb::SuiteParams suite;
  double gen_time = 60.0;
  int gen_jobs = 1;
  std::uint64_t gen_first = 1;
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--sizes", suite.sizes, "Task counts")->delimiter(',');
  gen->add_option("--seeds", suite.seeds_per_size, "Seeds per size")->check(CLI::NonNegativeNumber);
  gen->add_option("--first-seed", gen_first, "First seed");
  gen->add_option("--stations", suite.generator.num_stations, "Stations (0 = from total time)");
  gen->add_option("--target-cycle-time", suite.generator.target_cycle_time, "Rebalance cycle time");
  gen->add_option("--baseline-cycle-times", suite.generator.baseline_cycle_times,
                  "Cycle times for the current configuration")
      ->delimiter(',');
  gen->add_option("--internal-probability", suite.generator.internal_probability);
  gen->add_option("--max-predecessors", suite.generator.max_predecessors);
  gen->add_option("--time-limit", gen_time, "Seconds per solve")->check(CLI::PositiveNumber);
  gen->add_option("--jobs", gen_jobs, "Parallel instances")->check(CLI::PositiveNumber);

  // solve
  auto* sol = app.add_subcommand("solve", "Rebalance one instance");
  SolveFlags sf;
  sol->add_option("instance", sf.instance, "Instance file")->required();
  sol->add_option("-o,--out", sf.out, "Solution file (default stdout)");
  sol->add_option("--cycle-time", sf.cycle_time, "New cycle time (default: the instance's)");
  sol->add_option("--weights", sf.weights, "Weights for -MSF, range of load, range of ergonomic load")
      ->delimiter(',')
      ->expected(3);
  sol->add_option("--gap", sf.gap, "Relative gap at which to stop");
  sol->add_option("--workers", sf.workers, "Override the worker count");
  sol->add_flag("--size-workers", sf.size_workers, "Use the minimum feasible worker count");
  sol->add_flag("--require-nonempty-workers", sf.nonempty, "Every worker gets a task");
  sol->add_option("--progress", sf.progress, "Seconds between progress lines on stderr");
  add_solver_flags(sol, sf.time_limit, sf.seed);

  // check
  auto* chk = app.add_subcommand("check", "Report violated constraints of a solution");
  std::string chk_instance, chk_solution, chk_encoding = "both";
  int chk_ct = 0;
  chk->add_option("instance", chk_instance)->required();
  chk->add_option("solution", chk_solution)->required();
  chk->add_option("--encoding", chk_encoding)
      ->check(CLI::IsMember({"semantic", "linearized", "both"}));
  chk->add_option("--cycle-time", chk_ct, "Cycle time (default: the solution's)");

  // metrics
  auto* met = app.add_subcommand("metrics", "Objective report of a solution");
  std::string met_instance, met_solution;
  met->add_option("instance", met_instance)->required();
  met->add_option("solution", met_solution)->required();

  // bench
  auto* ben = app.add_subcommand("bench", "Rebalance every instance of a manifest");
  std::string ben_manifest, ben_encoding = "both";
  alrb::SuiteOptions so;
  double ben_time = 60.0;
  std::uint64_t ben_seed = 0;
  ben->add_option("manifest", ben_manifest)->required();
  ben->add_option("--out", so.out_dir, "Output directory");
  ben->add_option("--jobs", so.parallelism, "Parallel solves")->check(CLI::PositiveNumber);
  ben->add_option("--encoding", ben_encoding)
      ->check(CLI::IsMember({"semantic", "linearized", "both"}));
  add_solver_flags(ben, ben_time, ben_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*gen) {
      suite.first_seed = gen_first;
      alrb::SolveOptions o;
      o.time_limit = alrb::Seconds(gen_time);
      const alrb::Manifest m = alrb::generate_suite(suite, gen_out, o, gen_jobs);
      std::fprintf(stderr, "%zu instances, %zu discarded -> %s\n", m.instances.size(),
                   m.discards.size(), (std::filesystem::path(gen_out) / "manifest.json").c_str());
      return kOk;
    }
    if (*sol) return run_solve(sf);
    if (*chk) {
      const Loaded l = load_pair(chk_instance, chk_solution);
      const int ct = chk_ct > 0 ? chk_ct : l.solution.cycle_time;
      const nlohmann::json doc =
          check_report(*l.solution.configuration, l.instance, ct, chk_encoding != "linearized",
                       chk_encoding != "semantic");
      std::cout << doc.dump(2) << '\n';
      return doc.at("feasible").get<bool>() ? kOk : kInfeasible;
    }
    if (*met) {
      const Loaded l = load_pair(met_instance, met_solution);
      const auto& b = l.solution.bounds;
      const ObjectiveReport r = make_report(*l.solution.configuration, l.instance,
                                            b ? &*b : nullptr, l.solution.weights);
      nlohmann::json doc = report_to_json(r);
      const Fairness f = fairness(r);
      doc["wl_nr"] = f.wl_nr;
      doc["wl_cv"] = f.wl_cv;
      doc["el_nr"] = f.el_nr;
      doc["el_cv"] = f.el_cv;
      std::cout << doc.dump(2) << '\n';
      return kOk;
    }
    if (*ben) {
      so.encoding = alrb::encoding_check_from_name(ben_encoding);
      so.solve.time_limit = alrb::Seconds(ben_time);
      so.solve.random_seed = ben_seed;
      const alrb::Manifest m = alrb::load_manifest_file(ben_manifest);
      const auto dir = std::filesystem::path(ben_manifest).parent_path().string();
      const auto records = alrb::run_suite(m, dir, so);
      int failed = 0, resumed = 0;
      for (const auto& r : records) {
        failed += r.has_metrics() ? 0 : 1;
        resumed += r.resumed ? 1 : 0;
      }
      std::fprintf(stderr, "%zu records (%d resumed, %d without metrics) -> %s\n", records.size(),
                   resumed, failed, so.out_dir.c_str());
      return kOk;
    }
  } catch (const alrb::InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const alrb::TimeLimitError& e) {
    std::fprintf(stderr, "time limit: %s\n", e.what());
    return kTimeLimit;
  } catch (const alrb::ValidationError& e) {
    std::fprintf(stderr, "invalid instance:\n");
    for (const auto& p : e.problems()) std::fprintf(stderr, "  %s\n", p.c_str());
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvalidInput;
  }
  return kOk;
}
