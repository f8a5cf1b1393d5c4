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

#include "istruct/planning.h"

#include <cmath>
#include <limits>

namespace istruct {
namespace {

constexpr double kTieTolerance = 1e-12;

double ValueRecurse(const PostModel& model, const DeterministicPolicy& det,
                    const std::vector<double>& weights, int p,
                    std::int64_t index, std::vector<int>& obs) {
  if (p == model.horizon()) return weights[index];
  int card = model.position_card(p);
  if (model.is_action_position(p)) {
    int t = model.observable_variable(p);
    int x = det.choice[t][model.InfoRowFromObservables(t, obs.data())];
    obs[p] = x;
    return ValueRecurse(model, det, weights, p + 1, index * card + x, obs);
  }
  double total = 0.0;
  for (int x = 0; x < card; ++x) {
    obs[p] = x;
    total += ValueRecurse(model, det, weights, p + 1, index * card + x, obs);
  }
  return total;
}

}  // namespace

PolicySpace::PolicySpace(const PostModel& model, std::vector<int> vars)
    : model_(&model), vars_(std::move(vars)) {
  if (vars_.empty()) {
    for (int t = 0; t < model.num_variables(); ++t) {
      if (model.variable(t).is_action()) vars_.push_back(t);
    }
  }
  std::vector<int> digits;
  for (int t : vars_) {
    std::int64_t rows = model.info_space(t).size();
    for (std::int64_t r = 0; r < rows; ++r) {
      digits.push_back(model.variable(t).cardinality);
    }
  }
  space_ = ProductSpace(digits);
}

void PolicySpace::Decode(std::int64_t index, DeterministicPolicy& det) const {
  std::vector<int> digits = space_.Decode(index);
  std::size_t k = 0;
  for (int t : vars_) {
    std::int64_t rows = model_->info_space(t).size();
    det.choice[t].resize(rows);
    for (std::int64_t r = 0; r < rows; ++r) det.choice[t][r] = digits[k++];
  }
}

DeterministicPolicy PolicySpace::Decode(std::int64_t index) const {
  DeterministicPolicy det = ZeroPolicy(*model_);
  Decode(index, det);
  return det;
}

DeterministicPolicy ZeroPolicy(const PostModel& model) {
  DeterministicPolicy det;
  det.choice.resize(model.num_variables());
  for (int t = 0; t < model.num_variables(); ++t) {
    if (model.variable(t).is_action()) {
      det.choice[t].assign(model.info_space(t).size(), 0);
    }
  }
  return det;
}

bool Consistent(const PostModel& model, const DeterministicPolicy& det,
                const int* obs) {
  for (int p = 0; p < model.horizon(); ++p) {
    if (!model.is_action_position(p)) continue;
    int t = model.observable_variable(p);
    if (det.choice[t][model.InfoRowFromObservables(t, obs)] != obs[p]) {
      return false;
    }
  }
  return true;
}

double DeterministicValue(const PostModel& model, const DeterministicPolicy& det,
                          const std::vector<double>& weights) {
  std::vector<int> obs(model.horizon(), 0);
  return ValueRecurse(model, det, weights, 0, 0, obs);
}

PlanResult PlanExhaustive(const PostModel& model,
                          const std::vector<double>& weights,
                          std::int64_t budget) {
  PolicySpace space(model);
  CheckBudget("policy enumeration", space.size(), budget);
  PlanResult best;
  best.policy = ZeroPolicy(model);
  best.value = -std::numeric_limits<double>::infinity();
  DeterministicPolicy det = ZeroPolicy(model);
  for (std::int64_t i = 0; i < space.size(); ++i) {
    space.Decode(i, det);
    double v = DeterministicValue(model, det, weights);
    if (v > best.value + kTieTolerance) {
      best.value = v;
      best.index = i;
      best.policy = det;
    }
  }
  return best;
}

std::vector<double> Product(const std::vector<double>& a,
                            const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double MaxPolicyTotalVariation(const PostModel& model,
                               const std::vector<double>& do_table_a,
                               const std::vector<double>& do_table_b,
                               std::int64_t budget) {
  std::vector<double> diff(do_table_a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = std::abs(do_table_a[i] - do_table_b[i]);
  }
  return PlanExhaustive(model, diff, budget).value;
}

}  // namespace istruct
