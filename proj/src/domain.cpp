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

#include "alrb/domain.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace alrb {
namespace {

using nlohmann::json;

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid instance:";
  for (const auto& p : problems) out += "\n  - " + p;
  return out;
}

std::string describe_cycle(const std::vector<int>& cycle) {
  std::string out = "cyclic precedence:";
  for (int t : cycle) out += " " + std::to_string(t + 1) + " ->";
  if (!cycle.empty()) out += " " + std::to_string(cycle.front() + 1);
  return out;
}

int get_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ParseError(where + ": field '" + key + "' is not an integer");
  }
  return v.get<int>();
}

std::vector<int> get_int_array(const json& obj, const char* key,
                               const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw ParseError(where + ": field '" + key + "' must be an array");
  }
  std::vector<int> out;
  for (const json& v : obj.at(key)) {
    if (!v.is_number_integer()) {
      throw ParseError(where + ": field '" + key + "' holds a non-integer");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

void PrecedenceGraph::add(int task, int pred) {
  auto& p = preds_.at(task);
  auto it = std::lower_bound(p.begin(), p.end(), pred);
  if (it == p.end() || *it != pred) p.insert(it, pred);
}

std::vector<std::vector<int>> co_station_sets(const Configuration& config) {
  const int n = config.num_tasks();
  std::vector<std::vector<int>> sets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && config.task_station[i] == config.task_station[j]) {
        sets[i].push_back(j);
      }
    }
  }
  return sets;
}

DerivedFlags derive_flags(const Configuration& config, int num_stations,
                          const Configuration* reference) {
  DerivedFlags flags;
  std::vector<int> staff(num_stations, 0);
  for (int s : config.worker_station) {
    if (s >= 0 && s < num_stations) ++staff[s];
  }
  flags.station_shared.resize(num_stations);
  for (int s = 0; s < num_stations; ++s) flags.station_shared[s] = staff[s] >= 2;
  flags.worker_shared.resize(config.num_workers());
  for (int w = 0; w < config.num_workers(); ++w) {
    const int s = config.worker_station[w];
    flags.worker_shared[w] = s >= 0 && s < num_stations && flags.station_shared[s];
  }
  if (reference != nullptr) flags.neighbor_sets = co_station_sets(*reference);
  return flags;
}

int Instance::total_time() const {
  return std::accumulate(tasks.begin(), tasks.end(), 0,
                         [](int acc, const Task& t) { return acc + t.processing_time; });
}

int Instance::total_ergo() const {
  return std::accumulate(tasks.begin(), tasks.end(), 0,
                         [](int acc, const Task& t) { return acc + t.ergonomic_index; });
}

Instance Instance::with_workers(int workers) const {
  Instance copy = *this;
  copy.num_workers = workers;
  return copy;
}

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

CycleError::CycleError(std::vector<int> cycle)
    : std::runtime_error(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

std::vector<int> topological_order(const PrecedenceGraph& precedence) {
  const int n = static_cast<int>(precedence.size());
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indegree(n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i : precedence.predecessors(j)) {
      succ[i].push_back(j);
      ++indegree[j];
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int j : succ[i]) {
      if (--indegree[j] == 0) ready.push(j);
    }
  }
  if (static_cast<int>(order.size()) == n) return order;

  // Every leftover node keeps a leftover predecessor, so walking backwards
  // must revisit a node.
  int v = 0;
  while (indegree[v] == 0) ++v;
  std::vector<int> position(n, -1);
  std::vector<int> walk;
  while (position[v] < 0) {
    position[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    for (int p : precedence.predecessors(v)) {
      if (indegree[p] > 0) {
        v = p;
        break;
      }
    }
  }
  std::vector<int> cycle(walk.begin() + position[v], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  // Rotate so the cycle starts at its smallest index.
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  throw CycleError(std::move(cycle));
}

WorkerBounds worker_bounds(int num_workers, int num_stations) {
  if (num_workers < 1 || num_stations < 1) {
    throw std::invalid_argument("worker_bounds: counts must be positive");
  }
  return {num_workers / num_stations, (num_workers + num_stations - 1) / num_stations};
}

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> problems;
  const int n = instance.num_tasks();
  if (n < 1) problems.emplace_back("instance has no tasks");
  if (instance.cycle_time < 1) problems.emplace_back("cycle_time must be >= 1");
  if (instance.num_stations < 1) problems.emplace_back("num_stations must be >= 1");
  if (instance.num_workers < 1) problems.emplace_back("num_workers must be >= 1");
  if (instance.num_workers < instance.num_stations) {
    problems.emplace_back("num_workers (" + std::to_string(instance.num_workers) +
                          ") is smaller than num_stations (" +
                          std::to_string(instance.num_stations) + ")");
  }
  for (int i = 0; i < n; ++i) {
    const Task& t = instance.tasks[i];
    const std::string tag = "task " + std::to_string(i + 1);
    if (t.processing_time < 1) {
      problems.push_back(tag + ": field 'time' = " + std::to_string(t.processing_time) +
                         " must be >= 1");
    }
    if (t.ergonomic_index < 1 || t.ergonomic_index > 5) {
      problems.push_back(tag + ": field 'ergo' = " + std::to_string(t.ergonomic_index) +
                         " outside 1..5");
    }
    const int a = static_cast<int>(t.area);
    if (a != 0 && a != 1) {
      problems.push_back(tag + ": field 'area' = " + std::to_string(a) + " not in {0,1}");
    }
  }

  bool ids_ok = instance.precedence.size() == static_cast<std::size_t>(n);
  if (!ids_ok) problems.emplace_back("precedence graph size does not match task count");
  for (std::size_t j = 0; ids_ok && j < instance.precedence.size(); ++j) {
    for (int p : instance.precedence.predecessors(static_cast<int>(j))) {
      if (p < 0 || p >= n) {
        problems.push_back("task " + std::to_string(j + 1) + ": unknown predecessor " +
                           std::to_string(p + 1));
        ids_ok = false;
      } else if (p == static_cast<int>(j)) {
        problems.push_back("task " + std::to_string(j + 1) + " precedes itself");
      }
    }
  }
  if (ids_ok) {
    try {
      topological_order(instance.precedence);
    } catch (const CycleError& e) {
      problems.emplace_back(e.what());
    }
  }

  if (instance.current) {
    const Configuration& c = *instance.current;
    const int s_count = instance.num_stations;
    const int w_count = c.num_workers();
    if (instance.current_cycle_time < 1) {
      problems.emplace_back("current: cycle_time must be >= 1");
    }
    if (c.num_tasks() != n || static_cast<int>(c.task_worker.size()) != n) {
      problems.emplace_back("current: task arrays must have one entry per task");
    } else {
      std::vector<int> load(w_count, 0);
      for (int i = 0; i < n; ++i) {
        const std::string tag = "current: task " + std::to_string(i + 1);
        const int s = c.task_station[i];
        const int w = c.task_worker[i];
        if (s < 0 || s >= s_count) {
          problems.push_back(tag + " has station " + std::to_string(s + 1) +
                             " outside 1.." + std::to_string(s_count));
        }
        if (w < 0 || w >= w_count) {
          problems.push_back(tag + " has worker " + std::to_string(w + 1) + " outside 1.." +
                             std::to_string(w_count));
          continue;
        }
        if (c.worker_station[w] != s) {
          problems.push_back(tag + " is at station " + std::to_string(s + 1) +
                             " but its worker " + std::to_string(w + 1) + " is at " +
                             (c.worker_station[w] == kUnassigned
                                  ? std::string("no station")
                                  : "station " + std::to_string(c.worker_station[w] + 1)));
        }
        if (i < static_cast<int>(instance.tasks.size())) {
          load[w] += instance.tasks[i].processing_time;
        }
      }
      for (int w = 0; w < w_count; ++w) {
        const int s = c.worker_station[w];
        if (s != kUnassigned && (s < 0 || s >= s_count)) {
          problems.push_back("current: worker " + std::to_string(w + 1) +
                             " has station " + std::to_string(s + 1) + " outside 0.." +
                             std::to_string(s_count));
        }
        if (load[w] > instance.current_cycle_time) {
          problems.push_back("current: worker " + std::to_string(w + 1) + " load " +
                             std::to_string(load[w]) + " exceeds recorded cycle time " +
                             std::to_string(instance.current_cycle_time));
        }
      }
    }
  }
  return problems;
}

nlohmann::json configuration_to_json(const Configuration& config) {
  json doc;
  std::vector<int> ts, tw, ws;
  for (int s : config.task_station) ts.push_back(s + 1);
  for (int w : config.task_worker) tw.push_back(w + 1);
  for (int s : config.worker_station) ws.push_back(s == kUnassigned ? 0 : s + 1);
  doc["task_station"] = ts;
  doc["task_worker"] = tw;
  doc["worker_station"] = ws;
  return doc;
}

Configuration configuration_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("configuration must be an object");
  Configuration c;
  for (int s : get_int_array(doc, "task_station", "configuration")) c.task_station.push_back(s - 1);
  for (int w : get_int_array(doc, "task_worker", "configuration")) c.task_worker.push_back(w - 1);
  for (int s : get_int_array(doc, "worker_station", "configuration")) {
    c.worker_station.push_back(s == 0 ? kUnassigned : s - 1);
  }
  return c;
}

Instance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be an object");
  Instance inst;
  inst.cycle_time = get_int(doc, "cycle_time", "instance");
  inst.num_stations = get_int(doc, "num_stations", "instance");
  inst.num_workers = get_int(doc, "num_workers", "instance");
  if (!doc.contains("tasks") || !doc.at("tasks").is_array()) {
    throw ParseError("instance: field 'tasks' must be an array");
  }

  std::vector<std::string> problems;
  const json& tasks = doc.at("tasks");
  const int n = static_cast<int>(tasks.size());
  inst.tasks.resize(n);
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const std::string where = "tasks[" + std::to_string(k) + "]";
    const int id = get_int(tasks[k], "id", where);
    if (id < 1 || id > n) {
      problems.push_back(where + ": id " + std::to_string(id) + " outside 1.." +
                         std::to_string(n));
      continue;
    }
    if (seen[id - 1]) {
      problems.push_back("duplicate task id " + std::to_string(id));
      continue;
    }
    seen[id - 1] = true;
    Task& t = inst.tasks[id - 1];
    t.processing_time = get_int(tasks[k], "time", where);
    t.ergonomic_index = get_int(tasks[k], "ergo", where);
    const int area = get_int(tasks[k], "area", where);
    if (area != 0 && area != 1) {
      problems.push_back("task " + std::to_string(id) + ": field 'area' = " +
                         std::to_string(area) + " not in {0,1}");
    }
    t.area = area == 1 ? Area::Internal : Area::External;
  }

  inst.precedence = PrecedenceGraph(n);
  if (doc.contains("precedence")) {
    const json& prec = doc.at("precedence");
    if (!prec.is_array()) throw ParseError("instance: field 'precedence' must be an array");
    for (std::size_t k = 0; k < prec.size(); ++k) {
      const std::string where = "precedence[" + std::to_string(k) + "]";
      const int task = get_int(prec[k], "task", where);
      const auto preds = get_int_array(prec[k], "preds", where);
      if (task < 1 || task > n) {
        problems.push_back(where + ": unknown task " + std::to_string(task));
        continue;
      }
      for (int p : preds) {
        if (p < 1 || p > n) {
          problems.push_back("task " + std::to_string(task) + ": unknown predecessor " +
                             std::to_string(p));
        } else {
          inst.precedence.add(task - 1, p - 1);
        }
      }
    }
  }

  if (doc.contains("current") && !doc.at("current").is_null()) {
    const json& cur = doc.at("current");
    inst.current_cycle_time = get_int(cur, "cycle_time", "current");
    inst.current = configuration_from_json(cur);
  }

  for (auto& p : validate(inst)) problems.push_back(std::move(p));
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return inst;
}

nlohmann::json instance_to_json(const Instance& instance) {
  json doc;
  doc["cycle_time"] = instance.cycle_time;
  doc["num_stations"] = instance.num_stations;
  doc["num_workers"] = instance.num_workers;
  json tasks = json::array();
  for (int i = 0; i < instance.num_tasks(); ++i) {
    const Task& t = instance.tasks[i];
    tasks.push_back({{"id", i + 1},
                     {"time", t.processing_time},
                     {"ergo", t.ergonomic_index},
                     {"area", static_cast<int>(t.area)}});
  }
  doc["tasks"] = std::move(tasks);
  json prec = json::array();
  for (int j = 0; j < static_cast<int>(instance.precedence.size()); ++j) {
    const auto& preds = instance.precedence.predecessors(j);
    if (preds.empty()) continue;
    std::vector<int> ids;
    for (int p : preds) ids.push_back(p + 1);
    prec.push_back({{"task", j + 1}, {"preds", ids}});
  }
  doc["precedence"] = std::move(prec);
  if (instance.current) {
    json cur = configuration_to_json(*instance.current);
    cur["cycle_time"] = instance.current_cycle_time;
    doc["current"] = std::move(cur);
  } else {
    doc["current"] = nullptr;
  }
  return doc;
}

Instance load_instance(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
  return instance_from_json(doc);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_instance(in);
}

void save_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(instance).dump(2) << '\n';
}

}  // namespace alrb
