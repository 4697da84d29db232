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


#include "alrb/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace alrb {
namespace {

using nlohmann::json;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::numeric_limits<double>::infinity();
  if (!doc.at(key).is_number()) throw ParseError(std::string("solution: field '") + key + "' must be a number");
  return doc.at(key).get<double>();
}

json aux_to_json(const LinearAux& aux) {
  json doc;
  std::vector<int> area;
  for (bool b : aux.area_flag) area.push_back(b ? 1 : 0);
  doc["area_flag"] = area;
  json solo = json::array();
  for (const auto& row : aux.solo_flag) {
    std::vector<int> r;
    for (bool b : row) r.push_back(b ? 1 : 0);
    solo.push_back(r);
  }
  doc["solo_flag"] = solo;
  return doc;
}

}  // namespace

Solution solution_from_result(const SolveResult& result, int cycle_time,
                              const std::optional<NormalizationBounds>& bounds,
                              const Weights& weights) {
  Solution s;
  s.configuration = result.incumbent;
  s.cycle_time = cycle_time;
  s.status = result.status;
  s.objective = result.objective;
  s.lower_bound = result.lower_bound;
  s.gap = result.gap;
  s.nodes = result.nodes_explored;
  s.elapsed_seconds = result.elapsed.count();
  s.bounds = bounds;
  s.weights = weights;
  return s;
}

json bounds_to_json(const NormalizationBounds& bounds) {
  json utopia, nadir;
  for (Component c : kAllComponents) {
    const std::string name(component_name(c));
    utopia[name] = bounds.utopia[static_cast<int>(c)];
    nadir[name] = bounds.nadir[static_cast<int>(c)];
  }
  return {{"utopia", utopia}, {"nadir", nadir}};
}

NormalizationBounds bounds_from_json(const json& doc) {
  NormalizationBounds b;
  try {
    for (Component c : kAllComponents) {
      const std::string name(component_name(c));
      b.utopia[static_cast<int>(c)] = doc.at("utopia").at(name).get<double>();
      b.nadir[static_cast<int>(c)] = doc.at("nadir").at(name).get<double>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("normalization bounds: ") + e.what());
  }
  if (!b.valid()) throw ParseError("normalization bounds: utopia exceeds nadir");
  return b;
}

json solution_to_json(const Solution& s, const Instance& instance) {
  json doc;
  if (s.configuration) {
    doc = configuration_to_json(*s.configuration);
  } else {
    doc["task_station"] = nullptr;
    doc["task_worker"] = nullptr;
    doc["worker_station"] = nullptr;
  }
  doc["cycle_time"] = s.cycle_time;
  doc["status"] = s.status ? json(std::string(status_name(*s.status))) : json(nullptr);
  doc["objective"] = finite_or_null(s.objective);
  doc["lower_bound"] = finite_or_null(s.lower_bound);
  doc["gap"] = finite_or_null(s.gap);
  doc["nodes"] = s.nodes;
  doc["elapsed_seconds"] = s.elapsed_seconds;
  doc["weights"] = s.weights;
  doc["normalization"] = s.bounds ? bounds_to_json(*s.bounds) : json(nullptr);
  if (s.configuration) {
    const ObjectiveReport r = make_report(*s.configuration, instance,
                                          s.bounds ? &*s.bounds : nullptr, s.weights);
    json rep = report_to_json(r);
    if (!r.loads.empty() && r.l_max > 0) {
      const Fairness f = fairness(r);
      rep["wl_nr"] = f.wl_nr;
      rep["wl_cv"] = f.wl_cv;
      rep["el_nr"] = f.el_nr;
      rep["el_cv"] = f.el_cv;
    }
    doc["report"] = std::move(rep);
  } else {
    doc["report"] = nullptr;
  }
  return doc;
}

Solution solution_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("solution document must be an object");
  Solution s;
  try {
    if (doc.contains("task_station") && !doc.at("task_station").is_null()) {
      s.configuration = configuration_from_json(doc);
    }
    if (!doc.contains("cycle_time") || !doc.at("cycle_time").is_number_integer()) {
      throw ParseError("solution: field 'cycle_time' must be an integer");
    }
    s.cycle_time = doc.at("cycle_time").get<int>();
    if (doc.contains("status") && doc.at("status").is_string()) {
      s.status = status_from_name(doc.at("status").get<std::string>());
    }
    s.objective = number_or_inf(doc, "objective");
    s.lower_bound = number_or_inf(doc, "lower_bound");
    s.gap = number_or_inf(doc, "gap");
    if (doc.contains("nodes")) s.nodes = doc.at("nodes").get<std::int64_t>();
    if (doc.contains("elapsed_seconds")) s.elapsed_seconds = doc.at("elapsed_seconds").get<double>();
    if (doc.contains("weights") && doc.at("weights").is_array()) {
      s.weights = doc.at("weights").get<Weights>();
    }
    if (doc.contains("normalization") && !doc.at("normalization").is_null()) {
      s.bounds = bounds_from_json(doc.at("normalization"));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("solution: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

Solution load_solution_file(const std::string& path) { return solution_from_json(read_json_file(path)); }

void write_json_file(const json& doc, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

json check_report(const Configuration& proposed, const Instance& instance, int cycle_time,
                  bool semantic, bool linearized) {
  json doc;
  doc["cycle_time"] = cycle_time;
  bool feasible = true;
  if (semantic) {
    const ViolationList v = check_semantic(proposed, instance, cycle_time);
    doc["semantic"] = {{"feasible", v.empty()}, {"violations", violations_to_json(v)}};
    feasible = feasible && v.empty();
  }
  if (linearized) {
    json lin;
    if (auto aux = find_linear_aux(proposed, instance, cycle_time)) {
      lin["feasible"] = true;
      lin["violations"] = json::array();
      lin["aux"] = aux_to_json(*aux);
    } else {
      // Report against the witness closest to feasibility.
      const LinearAux best = best_linear_aux(proposed, instance, cycle_time);
      const ViolationList v = check_linearized(proposed, best, instance, cycle_time);
      lin["feasible"] = false;
      lin["violations"] = violations_to_json(v);
      lin["aux"] = aux_to_json(best);
      feasible = false;
    }
    doc["linearized"] = std::move(lin);
  }
  doc["feasible"] = feasible;
  return doc;
}

}  // namespace alrb
