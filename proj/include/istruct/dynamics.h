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

#ifndef ISTRUCT_DYNAMICS_H_
#define ISTRUCT_DYNAMICS_H_

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "istruct/common.h"
#include "istruct/model.h"
#include "istruct/rng.h"

namespace istruct {

// Visits every full assignment with positive system weight. The weight is the
// product of system kernels only, so action values are enumerated freely.
// Work is bounded by joint_size(), which must fit in the budget.
void EnumerateJoint(const PostModel& model, std::int64_t budget,
                    const std::function<void(const int*, double)>& visit);

// Probability of a full assignment under a policy.
double TrajectoryProbability(const PostModel& model, const Policy& policy,
                             const std::vector<int>& assignment);

// Interventional probability of an observable prefix (values by position),
// summing out latent variables that precede its last element.
double DoProbability(const PostModel& model, const std::vector<int>& prefix);

// Interventional probabilities of all observable trajectories, indexed by
// trajectory_space().
std::vector<double> DoTable(const PostModel& model,
                            std::int64_t budget = kDefaultBudget);

// Reshape of a do-table into the |H_h| x |F_h| dynamics matrix.
Eigen::MatrixXd ReshapeDoTable(const std::vector<double>& table,
                               const PostModel& model, int h);
Eigen::MatrixXd DynamicsMatrix(const PostModel& model, int h,
                               std::int64_t budget = kDefaultBudget);

// Prefix probabilities implied by a do-table: sum over futures divided by the
// number of future action assignments. Indexed by the prefix space.
std::vector<double> PrefixTable(const std::vector<double>& table,
                                const PostModel& model, int h);

// Expected reward of a policy. `reward` is indexed by trajectory_space().
double PolicyValue(const PostModel& model, const Policy& policy,
                   std::int64_t budget = kDefaultBudget);
double PolicyValue(const PostModel& model, const Policy& policy,
                   const std::vector<double>& do_table,
                   const std::vector<double>& reward);

// Ancestral sample of a full assignment.
std::vector<int> SampleTrajectory(const PostModel& model, const Policy& policy,
                                  SplitMixRng& rng);

// Chooses an action value for action variable t given the partial assignment
// of all earlier variables.
using ActionChooser =
    std::function<int(int t, const std::vector<int>& assignment, SplitMixRng&)>;
std::vector<int> SampleTrajectory(const PostModel& model,
                                  const ActionChooser& chooser,
                                  SplitMixRng& rng);

// Conditional predictions P(target observables | conditioning variables; do
// target actions) for every pair of assignments. Rows follow the target
// positions' ProductSpace, columns the conditioning variables' ProductSpace.
// Actions outside both sets are averaged uniformly. Columns whose
// conditioning assignment has zero probability are left at zero and flagged.
struct ConditionalTable {
  Eigen::MatrixXd table;
  // Mass of each conditioning assignment, averaged over free actions.
  std::vector<double> column_mass;
};
ConditionalTable ConditionalFutureTable(const PostModel& model,
                                        const std::vector<int>& condition_vars,
                                        const std::vector<int>& target_positions,
                                        std::int64_t budget = kDefaultBudget);

}  // namespace istruct

#endif  // ISTRUCT_DYNAMICS_H_
