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

#ifndef ISTRUCT_MODEL_IO_H_
#define ISTRUCT_MODEL_IO_H_

#include <string>

#include "istruct/model.h"
#include "json.hpp"

namespace istruct {

// Model documents are JSON objects:
//
//   {"variables": [{"id": 1, "name": "s1", "kind": "system",
//                   "cardinality": 2, "observable": false,
//                   "info_set": []}, ...],
//    "kernels": [{"variable": 1, "table": [[0.5, 0.5]]}, ...],
//    "reward": [...]}
//
// Games replace "reward" with "agents": [{"actions": [ids]}, ...] and
// "rewards": [[...], ...]. Rewards are flat arrays over observable
// trajectories in lexicographic order. Schema errors raise ValidationError
// with a JSON pointer to the offending element.

bool IsGameDocument(const nlohmann::json& doc);
PostModel ParsePost(const nlohmann::json& doc);
PosgModel ParsePosg(const nlohmann::json& doc);

nlohmann::json ToJson(const PostModel& model);
nlohmann::json ToJson(const PosgModel& model);

// Reads and parses a JSON file. Throws ValidationError on I/O or syntax
// errors.
nlohmann::json ReadJsonFile(const std::string& path);
// Canonical text: sorted keys, two-space indent, trailing newline.
std::string CanonicalDump(const nlohmann::json& doc);

PostModel LoadPost(const std::string& path);
PosgModel LoadPosg(const std::string& path);

}  // namespace istruct

#endif  // ISTRUCT_MODEL_IO_H_
