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

#ifndef ISTRUCT_ZOO_H_
#define ISTRUCT_ZOO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "istruct/model.h"
#include "istruct/rng.h"

namespace istruct {

// Expected information-structural state at boundary h (past = positions
// [0, h)), with a label naming the variable it is attached to.
struct ExpectedSeparator {
  int h = 0;
  std::vector<int> vars;
  std::string label;
};

struct ZooEntry {
  std::string kind;
  PostModel model;
  // Multi-agent kinds also come as a game whose agents share the reward.
  std::optional<PosgModel> game;
  std::vector<ExpectedSeparator> expected_separators;
  // Bound on the rank stated for the structure.
  double expected_rank_bound = 1.0;
};

// Sizes shared by the example constructors. Which fields apply depends on the
// kind:
//   pomdp           states, observations, actions, horizon
//   dec_pomdp       agents, states, observations, actions, horizon
//   limited_memory  observations, actions, horizon, memory
//   mean_field      agents, states (local), actions (local), horizon
//   comm_feedback   states (source alphabet), actions (channel input),
//                   observations (channel output), horizon
//   fully_connected observations, actions, horizon
// `horizon` counts rounds. Kernel rows are drawn from `seed`: a flat random
// distribution scaled by `noise` plus 1 - noise on the value equal to the sum
// of the parent values mod card.
// Rows have full support whenever noise > 0.
struct ZooParams {
  int agents = 2;
  int states = 2;
  int observations = 2;
  int actions = 2;
  int horizon = 2;
  int memory = 1;
  double noise = 1.0;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& ZooKinds();

// Throws ValidationError on an unknown kind or invalid sizes.
ZooEntry MakeExample(const std::string& kind, const ZooParams& params);

// Exact size of the joint (dist(s), dist(a)) space with k local values for
// both, and the displayed bound
// k^2 (N/(k-1) + 1)^(2(k-1)).
struct MeanFieldCount {
  std::int64_t exact = 0;
  double bound = 0.0;
};
MeanFieldCount MeanFieldStateCount(int agents, int card);

// Number of ways to distribute n agents over k values.
std::int64_t CompositionCount(int n, int k);
// Rank of a count vector among all compositions of sum(counts) into
// counts.size() parts, lexicographic on the count vector.
std::int64_t CompositionIndex(const std::vector<int>& counts);

struct RandomPostOptions {
  int max_vars = 8;
  int max_card = 3;
  double action_fraction = 0.3;
  double latent_fraction = 0.3;
  // Probability that each earlier variable joins an information set.
  double edge_probability = 0.5;
  // Cap on the number of variables in one information set.
  int max_info = 3;
  bool with_reward = true;
};
PostModel RandomPost(std::uint64_t seed, const RandomPostOptions& options = {});

// A finite-horizon POMDP laid out as s_1, o_1, a_1, s_2, ... with the agent
// seeing all past observations and actions.
struct PomdpSpec {
  std::vector<double> initial;
  // Row s * |A| + a gives P(s' | s, a).
  std::vector<std::vector<double>> transition;
  // Row s gives P(o | s).
  std::vector<std::vector<double>> emission;
  int actions = 2;
  int rounds = 2;
};
PostModel MakePomdp(const PomdpSpec& spec, std::vector<double> reward = {});

// Row of random probabilities with full support.
std::vector<double> RandomDistribution(SplitMixRng& rng, int n);

}  // namespace istruct

#endif  // ISTRUCT_ZOO_H_
