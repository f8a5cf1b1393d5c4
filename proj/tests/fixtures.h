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

#ifndef ISTRUCT_TESTS_FIXTURES_H_
#define ISTRUCT_TESTS_FIXTURES_H_

#include <cstdint>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "istruct/model.h"
#include "istruct/model_io.h"
#include "istruct/rng.h"
#include "istruct/space.h"
#include "istruct/zoo.h"

namespace istruct::testing {

// Two-state control problem over positions o_1, a_1, o_2, a_2. Action 0
// keeps the state with probability `stay`, action 1 flips it with
// probability 0.9. Observations report the state with probability
// `accuracy`. The reward pays for o_2 = 1 and for a_2 matching o_2.
inline PostModel ControlPomdp(double accuracy, double stay) {
  PomdpSpec spec;
  spec.initial = {0.5, 0.5};
  spec.transition = {{stay, 1.0 - stay},
                     {0.1, 0.9},
                     {1.0 - stay, stay},
                     {0.9, 0.1}};
  spec.emission = {{accuracy, 1.0 - accuracy}, {1.0 - accuracy, accuracy}};
  spec.actions = 2;
  spec.rounds = 2;
  ProductSpace space({2, 2, 2, 2});
  std::vector<double> reward(space.size());
  for (std::int64_t i = 0; i < space.size(); ++i) {
    std::vector<int> v = space.Decode(i);
    reward[i] = 0.5 * (v[2] == 1) + 0.5 * (v[3] == v[2]);
  }
  return MakePomdp(spec, reward);
}

// Agent 1 sees a fair-or-biased coin o_1 and picks a_1; agent 2 sees a
// noisy copy o_2 of a_1 and picks a_2. Agent 1 wants a_2 != a_1 and agent 2
// gets the complement.
inline PosgModel GuessingGame(double flip, double first) {
  std::vector<VariableSpec> vars(4);
  vars[0] = {VarKind::kSystem, 2, true, {}, "o1"};
  vars[1] = {VarKind::kAction, 2, true, {0}, "a1"};
  vars[2] = {VarKind::kSystem, 2, true, {1}, "o2"};
  vars[3] = {VarKind::kAction, 2, true, {2}, "a2"};
  std::vector<std::vector<double>> kernels(4);
  kernels[0] = {1.0 - first, first};
  kernels[2] = {1.0 - flip, flip, flip, 1.0 - flip};
  PostModel post(vars, kernels);
  std::vector<double> r1(16), r2(16);
  ProductSpace space({2, 2, 2, 2});
  for (std::int64_t i = 0; i < 16; ++i) {
    std::vector<int> v = space.Decode(i);
    r1[i] = v[1] != v[3] ? 0.7 + 0.3 * v[0] : 0.2 - 0.2 * v[0];
    r2[i] = 1.0 - r1[i];
  }
  return PosgModel(post, {{1}, {3}}, {r1, r2});
}

// POMDP with emission (1 - eta) I + eta / |S| and random transitions.
inline PostModel IdentityPomdp(int states, int actions, int rounds,
                               double eta, std::uint64_t seed) {
  SplitMixRng rng(seed);
  PomdpSpec spec;
  spec.initial = RandomDistribution(rng, states);
  for (int r = 0; r < states * actions; ++r) {
    spec.transition.push_back(RandomDistribution(rng, states));
  }
  for (int s = 0; s < states; ++s) {
    std::vector<double> row(states, eta / states);
    row[s] += 1.0 - eta;
    spec.emission.push_back(row);
  }
  spec.actions = actions;
  spec.rounds = rounds;
  return MakePomdp(spec);
}

// Fresh scratch directory under the system temp path.
inline std::string ScratchDir(const std::string& name) {
  std::filesystem::path p = std::filesystem::temp_directory_path() /
                            ("istruct_" + name + "_" +
                             std::to_string(static_cast<long>(::getpid())));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

inline void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
}

inline std::string ReadText(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void WriteModel(const std::string& path, const PostModel& model) {
  WriteText(path, CanonicalDump(ToJson(model)));
}
inline void WriteModel(const std::string& path, const PosgModel& model) {
  WriteText(path, CanonicalDump(ToJson(model)));
}

// Runs a shell command and returns its exit status.
inline int Shell(const std::string& command) {
  int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace istruct::testing

#endif  // ISTRUCT_TESTS_FIXTURES_H_
