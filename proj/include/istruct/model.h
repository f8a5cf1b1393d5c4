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

#ifndef ISTRUCT_MODEL_H_
#define ISTRUCT_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "istruct/space.h"

namespace istruct {

enum class VarKind { kSystem, kAction };

// One variable of a partially observable sequential process. Variables are
// addressed by their 0-based position in the total order; model files use
// 1-based ids.
struct VariableSpec {
  VarKind kind = VarKind::kSystem;
  int cardinality = 1;
  bool observable = false;
  // Strictly increasing indices of earlier variables.
  std::vector<int> info_set;
  std::string name;

  bool is_action() const { return kind == VarKind::kAction; }
};

// Finite partially observable sequential team (POST). Kernels are dense
// row-major tables with one row per assignment of the information set (in
// ProductSpace order over info_set) and one column per value.
//
// Observable variables are numbered by position p = 0..H-1. The observable
// trajectory space is the ProductSpace over their cardinalities.
class PostModel {
 public:
  PostModel() = default;
  // Throws ValidationError when the variables or kernels are not well formed.
  PostModel(std::vector<VariableSpec> variables,
            std::vector<std::vector<double>> kernels,
            std::vector<double> reward = {});

  int num_variables() const { return static_cast<int>(variables_.size()); }
  const VariableSpec& variable(int t) const { return variables_[t]; }
  const std::vector<VariableSpec>& variables() const { return variables_; }
  const std::vector<double>& kernel(int t) const { return kernels_[t]; }
  const std::vector<std::vector<double>>& kernels() const { return kernels_; }
  double KernelEntry(int t, std::int64_t row, int x) const {
    return kernels_[t][row * variables_[t].cardinality + x];
  }

  // Number of observable variables.
  int horizon() const { return static_cast<int>(observables_.size()); }
  // Variable index of the observable at position p.
  int observable_variable(int p) const { return observables_[p]; }
  const std::vector<int>& observable_variables() const { return observables_; }
  // Position of variable t among observables, or -1 when latent.
  int position(int t) const { return positions_[t]; }
  bool is_action_position(int p) const {
    return variables_[observables_[p]].is_action();
  }
  int position_card(int p) const {
    return variables_[observables_[p]].cardinality;
  }

  const ProductSpace& trajectory_space() const { return trajectory_space_; }
  const ProductSpace& info_space(int t) const { return info_spaces_[t]; }
  // For action variables: positions of the information set among observables.
  const std::vector<int>& info_positions(int t) const {
    return info_positions_[t];
  }

  // Row of variable t's table for a full assignment indexed by variable.
  std::int64_t InfoRow(int t, const int* values) const {
    std::int64_t row = 0;
    const VariableSpec& v = variables_[t];
    for (std::size_t j = 0; j < v.info_set.size(); ++j) {
      row = row * variables_[v.info_set[j]].cardinality + values[v.info_set[j]];
    }
    return row;
  }
  // Row of action variable t's table for observable values indexed by
  // position.
  std::int64_t InfoRowFromObservables(int t, const int* obs) const {
    std::int64_t row = 0;
    const std::vector<int>& pos = info_positions_[t];
    for (std::size_t j = 0; j < pos.size(); ++j) {
      row = row * position_card(pos[j]) + obs[pos[j]];
    }
    return row;
  }

  bool has_reward() const { return !reward_.empty(); }
  const std::vector<double>& reward() const { return reward_; }
  void set_reward(std::vector<double> reward);

  // Product of all cardinalities.
  std::int64_t joint_size() const { return joint_size_; }
  // Product of cardinalities of action variables among positions [begin, end).
  std::int64_t ActionCount(int begin, int end) const;
  // Product of cardinalities of observable positions [begin, end).
  std::int64_t PositionCount(int begin, int end) const;

  // Variable index by name, or -1.
  int FindVariable(const std::string& name) const;
  std::string VariableLabel(int t) const;

 private:
  void Validate() const;

  std::vector<VariableSpec> variables_;
  std::vector<std::vector<double>> kernels_;
  std::vector<double> reward_;
  std::vector<int> observables_;
  std::vector<int> positions_;
  std::vector<ProductSpace> info_spaces_;
  std::vector<std::vector<int>> info_positions_;
  ProductSpace trajectory_space_;
  std::int64_t joint_size_ = 1;
};

// Partially observable sequential game. Every action variable belongs to
// exactly one agent and each agent has a reward over observable
// trajectories.
class PosgModel {
 public:
  PosgModel() = default;
  PosgModel(PostModel post, std::vector<std::vector<int>> agent_actions,
            std::vector<std::vector<double>> rewards);

  const PostModel& post() const { return post_; }
  int num_agents() const { return static_cast<int>(agent_actions_.size()); }
  const std::vector<int>& agent_actions(int i) const {
    return agent_actions_[i];
  }
  const std::vector<std::vector<int>>& all_agent_actions() const {
    return agent_actions_;
  }
  const std::vector<double>& reward(int i) const { return rewards_[i]; }
  const std::vector<std::vector<double>>& rewards() const { return rewards_; }
  // Agent owning action variable t, or -1.
  int AgentOf(int t) const { return owner_[t]; }
  // The team problem for agent i's reward.
  PostModel TeamView(int i) const;

 private:
  PostModel post_;
  std::vector<std::vector<int>> agent_actions_;
  std::vector<std::vector<double>> rewards_;
  std::vector<int> owner_;
};

// Deterministic policy: for each action variable, the chosen value per
// information row. Entries for system variables are empty.
struct DeterministicPolicy {
  std::vector<std::vector<int>> choice;
};

// Stochastic policy: for each action variable a row-major table over
// (information row, value). Entries for system variables are empty.
struct Policy {
  std::vector<std::vector<double>> tables;

  static Policy Uniform(const PostModel& model);
  static Policy FromDeterministic(const PostModel& model,
                                  const DeterministicPolicy& det);
  double Prob(const PostModel& model, int t, std::int64_t row, int x) const {
    return tables[t][row * model.variable(t).cardinality + x];
  }
};

// Throws ValidationError if the policy shape or rows are invalid.
void ValidatePolicy(const PostModel& model, const Policy& policy);

// Probability the policy assigns to the actions of an observable trajectory
// (values by position, possibly a prefix of length h).
double ActionProbability(const PostModel& model, const Policy& policy,
                         const int* obs, int h);

// Observable part of a full assignment, indexed by position.
std::vector<int> ObservablePart(const PostModel& model,
                                const std::vector<int>& assignment);

}  // namespace istruct

#endif  // ISTRUCT_MODEL_H_
