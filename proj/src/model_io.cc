// Copyright 2026 The istruct Authors. All rights reserved.
//
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

#include "istruct/model_io.h"

#include <fstream>
#include <map>
#include <sstream>

#include "istruct/common.h"

namespace istruct {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

const json& Field(const json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.is_object()) Fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, "missing field \"" + key + "\"");
  return *it;
}

int ReadInt(const json& value, const std::string& path) {
  if (!value.is_number_integer()) Fail(path, "expected an integer");
  return value.get<int>();
}

double ReadNumber(const json& value, const std::string& path) {
  if (!value.is_number()) Fail(path, "expected a number");
  return value.get<double>();
}

std::vector<double> ReadNumberArray(const json& value, const std::string& path) {
  if (!value.is_array()) Fail(path, "expected an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(ReadNumber(value[i], path + "/" + std::to_string(i)));
  }
  return out;
}

struct ParsedVariables {
  std::vector<VariableSpec> specs;
  // Array index in the document of each variable (by 0-based id).
  std::vector<int> doc_index;
};

ParsedVariables ParseVariables(const json& doc) {
  const json& vars = Field(doc, "variables", "");
  if (!vars.is_array()) Fail("/variables", "expected an array");
  const int n = static_cast<int>(vars.size());
  ParsedVariables out;
  out.specs.resize(n);
  out.doc_index.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    std::string path = "/variables/" + std::to_string(i);
    const json& v = vars[i];
    int id = ReadInt(Field(v, "id", path), path + "/id");
    if (id < 1 || id > n) Fail(path + "/id", "id must lie in 1..T");
    if (out.doc_index[id - 1] != -1) Fail(path + "/id", "duplicate id");
    out.doc_index[id - 1] = i;
    VariableSpec& spec = out.specs[id - 1];
    const json& kind = Field(v, "kind", path);
    if (kind == "system") {
      spec.kind = VarKind::kSystem;
    } else if (kind == "action") {
      spec.kind = VarKind::kAction;
    } else {
      Fail(path + "/kind", "expected \"system\" or \"action\"");
    }
    spec.cardinality = ReadInt(Field(v, "cardinality", path), path + "/cardinality");
    if (spec.cardinality < 1) Fail(path + "/cardinality", "must be positive");
    const json& obs = Field(v, "observable", path);
    if (!obs.is_boolean()) Fail(path + "/observable", "expected a boolean");
    spec.observable = obs.get<bool>();
    const json& info = Field(v, "info_set", path);
    if (!info.is_array()) Fail(path + "/info_set", "expected an array");
    for (std::size_t j = 0; j < info.size(); ++j) {
      std::string ipath = path + "/info_set/" + std::to_string(j);
      int parent = ReadInt(info[j], ipath);
      if (parent < 1 || parent >= id) {
        Fail(ipath, "information set entries must precede the variable");
      }
      spec.info_set.push_back(parent - 1);
    }
    if (v.contains("name")) {
      if (!v["name"].is_string()) Fail(path + "/name", "expected a string");
      spec.name = v["name"].get<std::string>();
    }
  }
  return out;
}

std::vector<std::vector<double>> ParseKernels(const json& doc, int n) {
  std::vector<std::vector<double>> kernels(n);
  std::vector<bool> seen(n, false);
  const json& list = Field(doc, "kernels", "");
  if (!list.is_array()) Fail("/kernels", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string path = "/kernels/" + std::to_string(i);
    int id = ReadInt(Field(list[i], "variable", path), path + "/variable");
    if (id < 1 || id > n) Fail(path + "/variable", "unknown variable id");
    if (seen[id - 1]) Fail(path + "/variable", "duplicate kernel");
    seen[id - 1] = true;
    const json& table = Field(list[i], "table", path);
    if (!table.is_array()) Fail(path + "/table", "expected an array of rows");
    std::size_t width = 0;
    for (std::size_t r = 0; r < table.size(); ++r) {
      std::string rpath = path + "/table/" + std::to_string(r);
      std::vector<double> row = ReadNumberArray(table[r], rpath);
      if (r == 0) width = row.size();
      if (row.size() != width) Fail(rpath, "rows must have equal length");
      kernels[id - 1].insert(kernels[id - 1].end(), row.begin(), row.end());
    }
  }
  return kernels;
}

PostModel BuildPost(const ParsedVariables& vars,
                    std::vector<std::vector<double>> kernels,
                    std::vector<double> reward) {
  try {
    return PostModel(vars.specs, std::move(kernels), std::move(reward));
  } catch (const ValidationError& e) {
    if (e.variable_id() > 0) {
      throw ValidationError(
          "/variables/" + std::to_string(vars.doc_index[e.variable_id() - 1]) +
              ": " + e.what(),
          e.variable_id());
    }
    throw;
  }
}

json TableJson(const PostModel& model, int t) {
  json rows = json::array();
  int card = model.variable(t).cardinality;
  const std::vector<double>& k = model.kernel(t);
  for (std::size_t r = 0; r * card < k.size(); ++r) {
    rows.push_back(std::vector<double>(k.begin() + r * card,
                                       k.begin() + (r + 1) * card));
  }
  return rows;
}

}  // namespace

bool IsGameDocument(const json& doc) {
  return doc.is_object() && doc.contains("agents");
}

PostModel ParsePost(const json& doc) {
  if (!doc.is_object()) Fail("", "expected a JSON object");
  ParsedVariables vars = ParseVariables(doc);
  auto kernels = ParseKernels(doc, static_cast<int>(vars.specs.size()));
  std::vector<double> reward;
  if (doc.contains("reward")) reward = ReadNumberArray(doc["reward"], "/reward");
  return BuildPost(vars, std::move(kernels), std::move(reward));
}

PosgModel ParsePosg(const json& doc) {
  if (!IsGameDocument(doc)) Fail("", "missing field \"agents\"");
  ParsedVariables vars = ParseVariables(doc);
  const int n = static_cast<int>(vars.specs.size());
  PostModel post = BuildPost(vars, ParseKernels(doc, n), {});
  const json& agents = doc["agents"];
  if (!agents.is_array()) Fail("/agents", "expected an array");
  std::vector<std::vector<int>> actions;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    std::string path = "/agents/" + std::to_string(i);
    const json& list = Field(agents[i], "actions", path);
    if (!list.is_array()) Fail(path + "/actions", "expected an array");
    std::vector<int> owned;
    for (std::size_t j = 0; j < list.size(); ++j) {
      std::string apath = path + "/actions/" + std::to_string(j);
      int id = ReadInt(list[j], apath);
      if (id < 1 || id > n) Fail(apath, "unknown variable id");
      owned.push_back(id - 1);
    }
    actions.push_back(std::move(owned));
  }
  const json& rewards = Field(doc, "rewards", "");
  if (!rewards.is_array()) Fail("/rewards", "expected an array");
  std::vector<std::vector<double>> per_agent;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    per_agent.push_back(
        ReadNumberArray(rewards[i], "/rewards/" + std::to_string(i)));
  }
  try {
    return PosgModel(std::move(post), std::move(actions), std::move(per_agent));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("/agents: ") + e.what(), e.variable_id());
  }
}

json ToJson(const PostModel& model) {
  json doc;
  json vars = json::array();
  json kernels = json::array();
  for (int t = 0; t < model.num_variables(); ++t) {
    const VariableSpec& v = model.variable(t);
    json info = json::array();
    for (int parent : v.info_set) info.push_back(parent + 1);
    json entry = {{"id", t + 1},
                  {"kind", v.is_action() ? "action" : "system"},
                  {"cardinality", v.cardinality},
                  {"observable", v.observable},
                  {"info_set", info}};
    if (!v.name.empty()) entry["name"] = v.name;
    vars.push_back(entry);
    if (!v.is_action()) {
      kernels.push_back({{"variable", t + 1}, {"table", TableJson(model, t)}});
    }
  }
  doc["variables"] = vars;
  doc["kernels"] = kernels;
  if (model.has_reward()) doc["reward"] = model.reward();
  return doc;
}

json ToJson(const PosgModel& model) {
  json doc = ToJson(model.post());
  json agents = json::array();
  for (int i = 0; i < model.num_agents(); ++i) {
    json ids = json::array();
    for (int t : model.agent_actions(i)) ids.push_back(t + 1);
    agents.push_back({{"actions", ids}});
  }
  doc["agents"] = agents;
  doc["rewards"] = model.rewards();
  return doc;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string CanonicalDump(const json& doc) { return doc.dump(2) + "\n"; }

PostModel LoadPost(const std::string& path) {
  return ParsePost(ReadJsonFile(path));
}

PosgModel LoadPosg(const std::string& path) {
  return ParsePosg(ReadJsonFile(path));
}

}  // namespace istruct
