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


#include "alrb/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <omp.h>

namespace alrb {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

std::string instance_id(int size, std::uint64_t seed) {
  return "n" + std::to_string(size) + "_s" + std::to_string(seed);
}

Fairness start_fairness(const Instance& instance) {
  const Instance at_start = instance.with_workers(instance.current->num_workers());
  return fairness(make_report(*instance.current, at_start));
}

struct Mean {
  double sum = 0.0;
  int n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  double value() const { return n == 0 ? 0.0 : sum / n; }
};

struct FairnessMean {
  Mean msf, wl_nr, wl_cv, el_nr, el_cv;
  void add(const Fairness& f) {
    wl_nr.add(f.wl_nr);
    wl_cv.add(f.wl_cv);
    el_nr.add(f.el_nr);
    el_cv.add(f.el_cv);
  }
  std::string row(bool with_msf) const {
    return (with_msf ? fmt(msf.value()) : std::string()) + "," + fmt(wl_nr.value()) + "," +
           fmt(wl_cv.value()) + "," + fmt(el_nr.value()) + "," + fmt(el_cv.value());
  }
};

}  // namespace

std::string_view scenario_name(Scenario s) {
  return s == Scenario::OptimalStart ? "optimal_start" : "suboptimal_start";
}

Scenario scenario_from_name(std::string_view name) {
  for (Scenario s : kScenarios) {
    if (scenario_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

double scenario_gap(Scenario s) { return s == Scenario::OptimalStart ? 0.0 : 0.8; }

std::string_view encoding_check_name(EncodingCheck e) {
  switch (e) {
    case EncodingCheck::Semantic: return "semantic";
    case EncodingCheck::Linearized: return "linearized";
    case EncodingCheck::Both: return "both";
  }
  return "?";
}

EncodingCheck encoding_check_from_name(std::string_view name) {
  for (EncodingCheck e : {EncodingCheck::Semantic, EncodingCheck::Linearized, EncodingCheck::Both}) {
    if (encoding_check_name(e) == name) return e;
  }
  throw std::invalid_argument("unknown encoding '" + std::string(name) + "'");
}

std::string diagnose_infeasibility(const Instance& instance, int cycle_time,
                                   const SolveOptions& options) {
  for (int i = 0; i < instance.num_tasks(); ++i) {
    if (instance.tasks[i].processing_time > cycle_time) {
      return "cycle_time: task " + std::to_string(i + 1) + " takes " +
             std::to_string(instance.tasks[i].processing_time) + " > " +
             std::to_string(cycle_time);
    }
  }
  const int workers = std::max(instance.num_stations,
                               (instance.total_time() + cycle_time - 1) / cycle_time);
  const std::string at = " at |W| = " + std::to_string(workers);
  Instance relaxed = instance.with_workers(workers);
  try {
    for (Task& t : relaxed.tasks) t.area = Area::External;
    if (has_feasible_configuration(relaxed, cycle_time, options)) return "work_area" + at;
    relaxed.precedence = PrecedenceGraph(relaxed.num_tasks());
    if (has_feasible_configuration(relaxed, cycle_time, options)) return "precedence" + at;
  } catch (const TimeLimitError&) {
    return "undetermined (time limit)" + at;
  }
  return "cycle_time and staffing" + at;
}

RebalanceOutcome run_rebalance(const Instance& instance, int target_cycle_time,
                               const SolveOptions& options) {
  if (!instance.current) throw std::invalid_argument("run_rebalance: instance has no current configuration");
  const auto start = std::chrono::steady_clock::now();
  int workers = 0;
  try {
    workers = find_min_workers(instance, target_cycle_time, options);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(std::string(e.what()) + "; blocked by " +
                          diagnose_infeasibility(instance, target_cycle_time, options));
  }
  RebalanceOutcome out;
  out.sized = instance.with_workers(workers);
  out.sized.cycle_time = target_cycle_time;
  out.bounds = compute_normalization(out.sized, target_cycle_time, options);
  out.result = solve(out.sized, target_cycle_time, out.bounds, options);
  if (out.result.incumbent) {
    out.report = make_report(*out.result.incumbent, out.sized, &out.bounds, options.weights);
  }
  out.total_time = std::chrono::steady_clock::now() - start;
  return out;
}

json manifest_to_json(const Manifest& m) {
  const GeneratorParams& g = m.params.generator;
  json params = {{"sizes", m.params.sizes},
                 {"seeds_per_size", m.params.seeds_per_size},
                 {"first_seed", m.params.first_seed},
                 {"time_range", {g.time_range.first, g.time_range.second}},
                 {"ergo_range", {g.ergo_range.first, g.ergo_range.second}},
                 {"internal_probability", g.internal_probability},
                 {"max_predecessors", g.max_predecessors},
                 {"target_cycle_time", g.target_cycle_time},
                 {"baseline_cycle_times", g.baseline_cycle_times},
                 {"num_stations", g.num_stations}};
  json instances = json::array();
  for (const ManifestEntry& e : m.instances) {
    instances.push_back({{"id", e.id},
                         {"size", e.size},
                         {"seed", e.seed},
                         {"baseline_cycle_time", e.baseline_cycle_time},
                         {"baseline_workers", e.baseline_workers},
                         {"files",
                          {{"optimal_start", e.optimal_file}, {"suboptimal_start", e.suboptimal_file}}}});
  }
  json discards = json::array();
  for (const Discard& d : m.discards) {
    discards.push_back({{"id", d.id}, {"size", d.size}, {"seed", d.seed}, {"reason", d.reason}});
  }
  return {{"params", params}, {"instances", instances}, {"discards", discards}};
}

Manifest manifest_from_json(const json& doc) {
  Manifest m;
  try {
    const json& p = doc.at("params");
    m.params.sizes = p.at("sizes").get<std::vector<int>>();
    m.params.seeds_per_size = p.at("seeds_per_size").get<int>();
    m.params.first_seed = p.at("first_seed").get<std::uint64_t>();
    GeneratorParams& g = m.params.generator;
    const auto tr = p.at("time_range").get<std::vector<int>>();
    const auto er = p.at("ergo_range").get<std::vector<int>>();
    if (tr.size() != 2 || er.size() != 2) throw ParseError("manifest: ranges need two entries");
    g.time_range = {tr[0], tr[1]};
    g.ergo_range = {er[0], er[1]};
    g.internal_probability = p.at("internal_probability").get<double>();
    g.max_predecessors = p.at("max_predecessors").get<int>();
    g.target_cycle_time = p.at("target_cycle_time").get<int>();
    g.baseline_cycle_times = p.at("baseline_cycle_times").get<std::vector<int>>();
    g.num_stations = p.at("num_stations").get<int>();
    for (const json& e : doc.at("instances")) {
      ManifestEntry entry;
      entry.id = e.at("id").get<std::string>();
      entry.size = e.at("size").get<int>();
      entry.seed = e.at("seed").get<std::uint64_t>();
      entry.baseline_cycle_time = e.at("baseline_cycle_time").get<int>();
      entry.baseline_workers = e.value("baseline_workers", 0);
      entry.optimal_file = e.at("files").at("optimal_start").get<std::string>();
      entry.suboptimal_file = e.at("files").at("suboptimal_start").get<std::string>();
      m.instances.push_back(std::move(entry));
    }
    if (doc.contains("discards")) {
      for (const json& d : doc.at("discards")) {
        m.discards.push_back({d.at("id").get<std::string>(), d.at("size").get<int>(),
                              d.at("seed").get<std::uint64_t>(), d.at("reason").get<std::string>()});
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

Manifest load_manifest_file(const std::string& path) { return manifest_from_json(read_json_file(path)); }

Manifest generate_suite(const SuiteParams& params, const std::string& dir,
                        const SolveOptions& options, int parallelism) {
  params.generator.validate();
  if (params.seeds_per_size < 0) throw std::invalid_argument("seeds_per_size must be >= 0");
  struct Job {
    int size;
    std::uint64_t seed;
    std::optional<ManifestEntry> entry;
    std::optional<Discard> discard;
  };
  std::vector<Job> jobs;
  for (int size : params.sizes) {
    if (size < 1) throw std::invalid_argument("suite sizes must be >= 1");
    for (int k = 0; k < params.seeds_per_size; ++k) {
      jobs.push_back({size, params.first_seed + static_cast<std::uint64_t>(k), {}, {}});
    }
  }
  const int target = params.generator.target_cycle_time;

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, parallelism))
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    Job& job = jobs[j];
    const std::string id = instance_id(job.size, job.seed);
    try {
      GeneratorParams gp = params.generator;
      gp.num_tasks = job.size;
      gp.seed = job.seed;
      const Instance inst = generate_instance(gp);
      ManifestEntry entry;
      entry.id = id;
      entry.size = job.size;
      entry.seed = job.seed;
      for (Scenario s : kScenarios) {
        SolveOptions o = options;
        o.gap_target = scenario_gap(s);
        const Baseline b = generate_baseline_detailed(inst, gp, o);
        if (entry.baseline_cycle_time != 0 && entry.baseline_cycle_time != b.cycle_time) {
          throw InfeasibleError("scenarios drew different baseline cycle times");
        }
        entry.baseline_cycle_time = b.cycle_time;
        entry.baseline_workers = b.workers;
        // The rebalance must be possible at the target cycle time.
        find_min_workers(b.instance, target, options);
        const std::string rel = "instances/" + id + "_" + std::string(scenario_name(s)) + ".json";
        write_json_file(instance_to_json(b.instance), (fs::path(dir) / rel).string());
        (s == Scenario::OptimalStart ? entry.optimal_file : entry.suboptimal_file) = rel;
      }
      job.entry = std::move(entry);
    } catch (const std::exception& e) {
      job.discard = Discard{id, job.size, job.seed, e.what()};
    }
  }

  Manifest m;
  m.params = params;
  for (Job& job : jobs) {
    if (job.entry) m.instances.push_back(std::move(*job.entry));
    if (job.discard) m.discards.push_back(std::move(*job.discard));
  }
  write_json_file(manifest_to_json(m), (fs::path(dir) / "manifest.json").string());
  return m;
}

namespace {

/// Fills metrics and encoding checks from an instance and its solution.
void fill_record(BenchmarkRecord& r, const Instance& instance, const Solution& sol,
                 EncodingCheck encoding) {
  r.status = sol.status;
  r.solve_time = Seconds(sol.elapsed_seconds);
  r.nodes = sol.nodes;
  r.baseline_fairness = start_fairness(instance);
  if (!sol.configuration) return;
  const Configuration& c = *sol.configuration;
  const Instance sized = instance.with_workers(c.num_workers());
  const bool semantic = check_semantic(c, sized, sol.cycle_time).empty();
  bool linear = semantic;
  if (encoding != EncodingCheck::Semantic) linear = find_linear_aux(c, sized, sol.cycle_time).has_value();
  r.encodings_agree = encoding != EncodingCheck::Both || semantic == linear;
  const bool ok = encoding == EncodingCheck::Linearized ? linear : semantic;
  if (!ok) {
    r.error = "incumbent fails the " + std::string(encoding_check_name(encoding)) + " check";
    return;
  }
  const ObjectiveReport rep = make_report(c, sized);
  r.msf = rep.msf;
  r.fairness = fairness(rep);
  r.workers_used = static_cast<int>(counted_workers(c).size());
}

std::optional<Solution> reusable_solution(const fs::path& path, const Instance& instance,
                                          int target) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    Solution sol = load_solution_file(path.string());
    if (!sol.status || sol.cycle_time != target || !sol.configuration) return std::nullopt;
    const Instance sized = instance.with_workers(sol.configuration->num_workers());
    if (!check_semantic(*sol.configuration, sized, target).empty()) return std::nullopt;
    return sol;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<BenchmarkRecord> run_suite(const Manifest& manifest, const std::string& manifest_dir,
                                       const SuiteOptions& options) {
  const int target = manifest.params.generator.target_cycle_time;
  std::vector<BenchmarkRecord> records;
  for (const ManifestEntry& e : manifest.instances) {
    for (Scenario s : kScenarios) {
      BenchmarkRecord r;
      r.instance_id = e.id;
      r.size = e.size;
      r.scenario = s;
      r.encoding_checked = options.encoding;
      records.push_back(std::move(r));
    }
  }
  const fs::path out(options.out_dir);
  fs::create_directories(out / "solutions");

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, options.parallelism))
  for (std::size_t k = 0; k < records.size(); ++k) {
    BenchmarkRecord& r = records[k];
    const ManifestEntry& e = manifest.instances[k / 2];
    try {
      const Instance inst =
          load_instance_file((fs::path(manifest_dir) / e.file(r.scenario)).string());
      const fs::path sol_path =
          out / "solutions" / (e.id + "_" + std::string(scenario_name(r.scenario)) + ".json");
      std::optional<Solution> sol = reusable_solution(sol_path, inst, target);
      r.resumed = sol.has_value();
      if (!sol) {
        const RebalanceOutcome o = run_rebalance(inst, target, options.solve);
        sol = solution_from_result(o.result, target, o.bounds, options.solve.weights);
        write_json_file(solution_to_json(*sol, o.sized), sol_path.string());
      }
      fill_record(r, inst, *sol, options.encoding);
    } catch (const std::exception& ex) {
      r.error = ex.what();
    }
  }

  write_text(out / "records.csv", records_csv(records));
  write_text(out / "cactus.csv", cactus_csv(records));
  write_text(out / "fairness.csv", fairness_csv(records));
  write_text(out / "robustness.csv", robustness_csv(records));
  return records;
}

std::string records_csv(const std::vector<BenchmarkRecord>& records) {
  std::ostringstream os;
  os << "instance_id,size,scenario,encoding_checked,status,solve_time,nodes,workers_used,msf,"
        "wl_nr,wl_cv,el_nr,el_cv,encodings_agree,resumed,error\n";
  for (const BenchmarkRecord& r : records) {
    os << r.instance_id << ',' << r.size << ',' << scenario_name(r.scenario) << ','
       << encoding_check_name(r.encoding_checked) << ','
       << (r.status ? status_name(*r.status) : std::string_view("error")) << ','
       << fmt(r.solve_time.count()) << ',' << r.nodes << ',' << r.workers_used << ',';
    if (r.has_metrics()) {
      os << fmt(r.msf.value_or(1.0)) << ',' << fmt(r.fairness->wl_nr) << ','
         << fmt(r.fairness->wl_cv) << ',' << fmt(r.fairness->el_nr) << ','
         << fmt(r.fairness->el_cv);
    } else {
      os << ",,,,";
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << ',' << (r.encodings_agree ? 1 : 0) << ',' << (r.resumed ? 1 : 0) << ',' << err << '\n';
  }
  return os.str();
}

std::string cactus_csv(const std::vector<BenchmarkRecord>& records) {
  std::vector<const BenchmarkRecord*> solved;
  for (const BenchmarkRecord& r : records) {
    if (r.has_metrics()) solved.push_back(&r);
  }
  std::stable_sort(solved.begin(), solved.end(), [](const auto* a, const auto* b) {
    return a->solve_time < b->solve_time;
  });
  std::ostringstream os;
  os << "rank,solve_time,encoding,instance_id,scenario\n";
  int rank = 0;
  for (const BenchmarkRecord* r : solved) {
    os << ++rank << ',' << fmt(r->solve_time.count()) << ','
       << encoding_check_name(r->encoding_checked) << ',' << r->instance_id << ','
       << scenario_name(r->scenario) << '\n';
  }
  return os.str();
}

std::string fairness_csv(const std::vector<BenchmarkRecord>& records) {
  std::map<int, FairnessMean> by_size;
  for (const BenchmarkRecord& r : records) {
    if (r.scenario != Scenario::OptimalStart || !r.has_metrics()) continue;
    FairnessMean& m = by_size[r.size];
    m.msf.add(r.msf.value_or(1.0));
    m.add(*r.fairness);
  }
  std::ostringstream os;
  os << "size,instances,msf,wl_nr,wl_cv,el_nr,el_cv\n";
  for (const auto& [size, m] : by_size) os << size << ',' << m.msf.n << ',' << m.row(true) << '\n';
  return os.str();
}

std::string robustness_csv(const std::vector<BenchmarkRecord>& records) {
  std::map<std::string, std::pair<const BenchmarkRecord*, const BenchmarkRecord*>> pairs;
  for (const BenchmarkRecord& r : records) {
    if (!r.has_metrics() || !r.baseline_fairness) continue;
    auto& p = pairs[r.instance_id];
    (r.scenario == Scenario::OptimalStart ? p.first : p.second) = &r;
  }
  FairnessMean start_opt, reb_opt, start_sub, reb_sub;
  int n = 0;
  for (const auto& [id, p] : pairs) {
    if (!p.first || !p.second) continue;
    ++n;
    start_opt.add(*p.first->baseline_fairness);
    reb_opt.add(*p.first->fairness);
    reb_opt.msf.add(p.first->msf.value_or(1.0));
    start_sub.add(*p.second->baseline_fairness);
    reb_sub.add(*p.second->fairness);
    reb_sub.msf.add(p.second->msf.value_or(1.0));
  }
  std::ostringstream os;
  os << "row,instances,msf,wl_nr,wl_cv,el_nr,el_cv\n";
  if (n > 0) {
    os << "optimal_start," << n << ',' << start_opt.row(false) << '\n';
    os << "rebalancing_opt," << n << ',' << reb_opt.row(true) << '\n';
    os << "suboptimal_start," << n << ',' << start_sub.row(false) << '\n';
    os << "rebalancing_subopt," << n << ',' << reb_sub.row(true) << '\n';
  }
  return os.str();
}

}  // namespace alrb
