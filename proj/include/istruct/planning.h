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

#ifndef ISTRUCT_PLANNING_H_
#define ISTRUCT_PLANNING_H_

#include <cstdint>
#include <vector>

#include "istruct/common.h"
#include "istruct/model.h"

namespace istruct {

// Deterministic policies over a set of action variables, indexed in
// lexicographic order of their tables (variables ascending, rows ascending,
// first entry most significant).
class PolicySpace {
 public:
  // All action variables when `vars` is empty.
  PolicySpace(const PostModel& model, std::vector<int> vars = {});

  std::int64_t size() const { return space_.size(); }
  const std::vector<int>& vars() const { return vars_; }
  // Writes the tables of policy `index` into `det`, leaving other variables
  // untouched. `det.choice` must have one entry per model variable.
  void Decode(std::int64_t index, DeterministicPolicy& det) const;
  DeterministicPolicy Decode(std::int64_t index) const;

 private:
  const PostModel* model_;
  std::vector<int> vars_;
  ProductSpace space_;
};

// Deterministic policy with every table sized and set to zero.
DeterministicPolicy ZeroPolicy(const PostModel& model);

// True iff the actions of the full observable trajectory are those chosen by
// the policy.
bool Consistent(const PostModel& model, const DeterministicPolicy& det,
                const int* obs);

// sum over trajectories consistent with the policy of weights[tau], where
// weights is indexed by trajectory_space().
double DeterministicValue(const PostModel& model, const DeterministicPolicy& det,
                          const std::vector<double>& weights);

struct PlanResult {
  DeterministicPolicy policy;
  std::int64_t index = 0;
  double value = 0.0;
};
// Exhaustive maximization of DeterministicValue. Ties keep the
// lexicographically first policy. Throws BudgetExceeded if the policy count
// exceeds the budget.
PlanResult PlanExhaustive(const PostModel& model,
                          const std::vector<double>& weights,
                          std::int64_t budget = kDefaultBudget);

// Elementwise product of two tables over trajectory_space().
std::vector<double> Product(const std::vector<double>& a,
                            const std::vector<double>& b);

// max over deterministic policies of sum_tau |P1(tau) - P2(tau)| pi(tau),
// the total variation (without the factor 1/2) between the two models'
// trajectory distributions under the worst policy.
double MaxPolicyTotalVariation(const PostModel& model,
                               const std::vector<double>& do_table_a,
                               const std::vector<double>& do_table_b,
                               std::int64_t budget = kDefaultBudget);

}  // namespace istruct

#endif  // ISTRUCT_PLANNING_H_
