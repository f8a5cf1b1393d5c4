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

#include "istruct/model.h"

#include <cmath>
#include <string>

#include "istruct/common.h"

namespace istruct {
namespace {

constexpr std::int64_t kMaxTableEntries = std::int64_t{1} << 28;

std::string Id(int t) { return "variable " + std::to_string(t + 1); }

void CheckDistributionRows(const std::vector<double>& table, int card,
                           std::int64_t rows, int t, const char* what) {
  for (std::int64_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (int x = 0; x < card; ++x) {
      double p = table[r * card + x];
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw ValidationError(Id(t) + ": " + what + " row " +
                                  std::to_string(r) + " has entry outside [0,1]",
                              t + 1);
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kLoadTolerance) {
      throw ValidationError(Id(t) + ": " + what + " row " + std::to_string(r) +
                                " sums to " + std::to_string(sum),
                            t + 1);
    }
  }
}

void CheckReward(const std::vector<double>& reward, std::int64_t size,
                 const std::string& what) {
  if (static_cast<std::int64_t>(reward.size()) != size) {
    throw ValidationError(what + " has " + std::to_string(reward.size()) +
                          " entries, expected " + std::to_string(size));
  }
  for (double r : reward) {
    if (!std::isfinite(r) || r < 0.0 || r > 1.0) {
      throw ValidationError(what + " has an entry outside [0,1]");
    }
  }
}

}  // namespace

PostModel::PostModel(std::vector<VariableSpec> variables,
                     std::vector<std::vector<double>> kernels,
                     std::vector<double> reward)
    : variables_(std::move(variables)),
      kernels_(std::move(kernels)),
      reward_(std::move(reward)) {
  const int n = num_variables();
  if (n == 0) throw ValidationError("model has no variables");
  positions_.assign(n, -1);
  info_spaces_.resize(n);
  info_positions_.resize(n);
  std::vector<int> cards;
  for (int t = 0; t < n; ++t) {
    const VariableSpec& v = variables_[t];
    if (v.cardinality < 1) {
      throw ValidationError(Id(t) + ": cardinality must be positive", t + 1);
    }
    std::vector<int> info_cards;
    for (std::size_t j = 0; j < v.info_set.size(); ++j) {
      int parent = v.info_set[j];
      if (parent < 0 || parent >= t) {
        throw ValidationError(
            Id(t) + ": information set must reference earlier variables",
            t + 1);
      }
      if (j > 0 && parent <= v.info_set[j - 1]) {
        throw ValidationError(
            Id(t) + ": information set must be strictly increasing", t + 1);
      }
      info_cards.push_back(variables_[parent].cardinality);
    }
    info_spaces_[t] = ProductSpace(info_cards);
    if (SafeMul(info_spaces_[t].size(), v.cardinality) > kMaxTableEntries) {
      throw ValidationError(Id(t) + ": table too large", t + 1);
    }
    if (v.observable) {
      positions_[t] = static_cast<int>(observables_.size());
      observables_.push_back(t);
      cards.push_back(v.cardinality);
    }
    joint_size_ = SafeMul(joint_size_, v.cardinality);
  }
  trajectory_space_ = ProductSpace(cards);
  for (int t = 0; t < n; ++t) {
    if (variables_[t].is_action()) {
      for (int parent : variables_[t].info_set) {
        info_positions_[t].push_back(positions_[parent]);
      }
    }
  }
  if (kernels_.size() < variables_.size()) kernels_.resize(variables_.size());
  Validate();
}

void PostModel::Validate() const {
  if (observables_.empty()) {
    throw ValidationError("model has no observable variables");
  }
  if (kernels_.size() != variables_.size()) {
    throw ValidationError("kernel list does not match variable list");
  }
  for (int t = 0; t < num_variables(); ++t) {
    const VariableSpec& v = variables_[t];
    if (v.is_action()) {
      if (!v.observable) {
        throw ValidationError(Id(t) + ": action variables must be observable",
                              t + 1);
      }
      for (int parent : v.info_set) {
        if (!variables_[parent].observable) {
          throw ValidationError(
              Id(t) + ": action information set references latent " +
                  Id(parent),
              t + 1);
        }
      }
      if (!kernels_[t].empty()) {
        throw ValidationError(Id(t) + ": action variables carry no kernel",
                              t + 1);
      }
      continue;
    }
    std::int64_t rows = info_spaces_[t].size();
    if (static_cast<std::int64_t>(kernels_[t].size()) != rows * v.cardinality) {
      throw ValidationError(Id(t) + ": kernel has " +
                                std::to_string(kernels_[t].size()) +
                                " entries, expected " +
                                std::to_string(rows * v.cardinality),
                            t + 1);
    }
    CheckDistributionRows(kernels_[t], v.cardinality, rows, t, "kernel");
  }
  if (!reward_.empty()) CheckReward(reward_, trajectory_space_.size(), "reward");
}

void PostModel::set_reward(std::vector<double> reward) {
  if (!reward.empty()) CheckReward(reward, trajectory_space_.size(), "reward");
  reward_ = std::move(reward);
}

std::int64_t PostModel::ActionCount(int begin, int end) const {
  std::int64_t count = 1;
  for (int p = begin; p < end; ++p) {
    if (is_action_position(p)) count = SafeMul(count, position_card(p));
  }
  return count;
}

std::int64_t PostModel::PositionCount(int begin, int end) const {
  std::int64_t count = 1;
  for (int p = begin; p < end; ++p) count = SafeMul(count, position_card(p));
  return count;
}

int PostModel::FindVariable(const std::string& name) const {
  for (int t = 0; t < num_variables(); ++t) {
    if (variables_[t].name == name) return t;
  }
  return -1;
}

std::string PostModel::VariableLabel(int t) const {
  if (!variables_[t].name.empty()) return variables_[t].name;
  return "x" + std::to_string(t + 1);
}

PosgModel::PosgModel(PostModel post, std::vector<std::vector<int>> agent_actions,
                     std::vector<std::vector<double>> rewards)
    : post_(std::move(post)),
      agent_actions_(std::move(agent_actions)),
      rewards_(std::move(rewards)) {
  const int n = post_.num_variables();
  owner_.assign(n, -1);
  if (agent_actions_.empty()) throw ValidationError("game has no agents");
  for (int i = 0; i < num_agents(); ++i) {
    for (int t : agent_actions_[i]) {
      if (t < 0 || t >= n || !post_.variable(t).is_action()) {
        throw ValidationError("agent " + std::to_string(i + 1) +
                              " owns a non-action variable");
      }
      if (owner_[t] != -1) {
        throw ValidationError(Id(t) + ": owned by more than one agent", t + 1);
      }
      owner_[t] = i;
    }
  }
  for (int t = 0; t < n; ++t) {
    if (post_.variable(t).is_action() && owner_[t] == -1) {
      throw ValidationError(Id(t) + ": action has no owning agent", t + 1);
    }
  }
  if (static_cast<int>(rewards_.size()) != num_agents()) {
    throw ValidationError("game needs one reward per agent");
  }
  for (int i = 0; i < num_agents(); ++i) {
    CheckReward(rewards_[i], post_.trajectory_space().size(),
                "reward of agent " + std::to_string(i + 1));
  }
}

PostModel PosgModel::TeamView(int i) const {
  PostModel team = post_;
  team.set_reward(rewards_[i]);
  return team;
}

Policy Policy::Uniform(const PostModel& model) {
  Policy policy;
  policy.tables.resize(model.num_variables());
  for (int t = 0; t < model.num_variables(); ++t) {
    const VariableSpec& v = model.variable(t);
    if (!v.is_action()) continue;
    policy.tables[t].assign(model.info_space(t).size() * v.cardinality,
                            1.0 / v.cardinality);
  }
  return policy;
}

Policy Policy::FromDeterministic(const PostModel& model,
                                 const DeterministicPolicy& det) {
  Policy policy;
  policy.tables.resize(model.num_variables());
  for (int t = 0; t < model.num_variables(); ++t) {
    const VariableSpec& v = model.variable(t);
    if (!v.is_action()) continue;
    std::int64_t rows = model.info_space(t).size();
    policy.tables[t].assign(rows * v.cardinality, 0.0);
    for (std::int64_t r = 0; r < rows; ++r) {
      policy.tables[t][r * v.cardinality + det.choice[t][r]] = 1.0;
    }
  }
  return policy;
}

void ValidatePolicy(const PostModel& model, const Policy& policy) {
  if (static_cast<int>(policy.tables.size()) != model.num_variables()) {
    throw ValidationError("policy does not match the model's variables");
  }
  for (int t = 0; t < model.num_variables(); ++t) {
    const VariableSpec& v = model.variable(t);
    if (!v.is_action()) continue;
    std::int64_t rows = model.info_space(t).size();
    if (static_cast<std::int64_t>(policy.tables[t].size()) !=
        rows * v.cardinality) {
      throw ValidationError(Id(t) + ": policy table has the wrong size", t + 1);
    }
    CheckDistributionRows(policy.tables[t], v.cardinality, rows, t, "policy");
  }
}

double ActionProbability(const PostModel& model, const Policy& policy,
                         const int* obs, int h) {
  double prob = 1.0;
  for (int p = 0; p < h; ++p) {
    if (!model.is_action_position(p)) continue;
    int t = model.observable_variable(p);
    prob *= policy.Prob(model, t, model.InfoRowFromObservables(t, obs), obs[p]);
    if (prob == 0.0) break;
  }
  return prob;
}

std::vector<int> ObservablePart(const PostModel& model,
                                const std::vector<int>& assignment) {
  std::vector<int> obs(model.horizon());
  for (int p = 0; p < model.horizon(); ++p) {
    obs[p] = assignment[model.observable_variable(p)];
  }
  return obs;
}

}  // namespace istruct
