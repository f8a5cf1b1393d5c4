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

#include "istruct/dynamics.h"

#include <stdexcept>

namespace istruct {
namespace {

void Recurse(const PostModel& model, int t, double weight,
             std::vector<int>& values,
             const std::function<void(const int*, double)>& visit) {
  if (t == model.num_variables()) {
    visit(values.data(), weight);
    return;
  }
  const VariableSpec& v = model.variable(t);
  if (v.is_action()) {
    for (int x = 0; x < v.cardinality; ++x) {
      values[t] = x;
      Recurse(model, t + 1, weight, values, visit);
    }
    return;
  }
  std::int64_t row = model.InfoRow(t, values.data());
  for (int x = 0; x < v.cardinality; ++x) {
    double w = weight * model.KernelEntry(t, row, x);
    if (w == 0.0) continue;
    values[t] = x;
    Recurse(model, t + 1, w, values, visit);
  }
}

double PrefixRecurse(const PostModel& model, int t, int last,
                     const std::vector<int>& prefix, std::vector<int>& values) {
  if (t > last) return 1.0;
  const VariableSpec& v = model.variable(t);
  int p = model.position(t);
  if (p >= 0) {
    values[t] = prefix[p];
    if (v.is_action()) return PrefixRecurse(model, t + 1, last, prefix, values);
    double k = model.KernelEntry(t, model.InfoRow(t, values.data()), prefix[p]);
    if (k == 0.0) return 0.0;
    return k * PrefixRecurse(model, t + 1, last, prefix, values);
  }
  std::int64_t row = model.InfoRow(t, values.data());
  double total = 0.0;
  for (int x = 0; x < v.cardinality; ++x) {
    double k = model.KernelEntry(t, row, x);
    if (k == 0.0) continue;
    values[t] = x;
    total += k * PrefixRecurse(model, t + 1, last, prefix, values);
  }
  return total;
}

}  // namespace

void EnumerateJoint(const PostModel& model, std::int64_t budget,
                    const std::function<void(const int*, double)>& visit) {
  CheckBudget("joint enumeration", model.joint_size(), budget);
  std::vector<int> values(model.num_variables(), 0);
  Recurse(model, 0, 1.0, values, visit);
}

double TrajectoryProbability(const PostModel& model, const Policy& policy,
                             const std::vector<int>& assignment) {
  if (static_cast<int>(assignment.size()) != model.num_variables()) {
    throw std::invalid_argument("assignment length does not match the model");
  }
  double prob = 1.0;
  for (int t = 0; t < model.num_variables(); ++t) {
    std::int64_t row = model.InfoRow(t, assignment.data());
    if (model.variable(t).is_action()) {
      prob *= policy.Prob(model, t, row, assignment[t]);
    } else {
      prob *= model.KernelEntry(t, row, assignment[t]);
    }
  }
  return prob;
}

double DoProbability(const PostModel& model, const std::vector<int>& prefix) {
  int h = static_cast<int>(prefix.size());
  if (h > model.horizon()) throw std::invalid_argument("prefix too long");
  if (h == 0) return 1.0;
  std::vector<int> values(model.num_variables(), 0);
  return PrefixRecurse(model, 0, model.observable_variable(h - 1), prefix,
                       values);
}

std::vector<double> DoTable(const PostModel& model, std::int64_t budget) {
  const ProductSpace& space = model.trajectory_space();
  CheckBudget("do-probability table", space.size(), budget);
  std::vector<double> table(space.size(), 0.0);
  const std::vector<int>& obs_vars = model.observable_variables();
  EnumerateJoint(model, budget, [&](const int* values, double w) {
    std::int64_t index = 0;
    for (std::size_t p = 0; p < obs_vars.size(); ++p) {
      index = index * space.card(static_cast<int>(p)) + values[obs_vars[p]];
    }
    table[index] += w;
  });
  return table;
}

Eigen::MatrixXd ReshapeDoTable(const std::vector<double>& table,
                               const PostModel& model, int h) {
  int H = model.horizon();
  if (h < 0 || h > H) throw std::invalid_argument("step out of range");
  std::int64_t rows = model.PositionCount(0, h);
  std::int64_t cols = model.PositionCount(h, H);
  Eigen::MatrixXd d(rows, cols);
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) d(r, c) = table[r * cols + c];
  }
  return d;
}

Eigen::MatrixXd DynamicsMatrix(const PostModel& model, int h,
                               std::int64_t budget) {
  return ReshapeDoTable(DoTable(model, budget), model, h);
}

std::vector<double> PrefixTable(const std::vector<double>& table,
                                const PostModel& model, int h) {
  int H = model.horizon();
  std::int64_t rows = model.PositionCount(0, h);
  std::int64_t cols = model.PositionCount(h, H);
  double scale = 1.0 / static_cast<double>(model.ActionCount(h, H));
  std::vector<double> prefix(rows, 0.0);
  for (std::int64_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::int64_t c = 0; c < cols; ++c) sum += table[r * cols + c];
    prefix[r] = sum * scale;
  }
  return prefix;
}

double PolicyValue(const PostModel& model, const Policy& policy,
                   const std::vector<double>& do_table,
                   const std::vector<double>& reward) {
  const ProductSpace& space = model.trajectory_space();
  std::vector<int> obs(space.rank(), 0);
  double value = 0.0;
  for (std::int64_t i = 0; i < space.size(); ++i, space.Next(obs)) {
    if (reward[i] == 0.0 || do_table[i] == 0.0) continue;
    value += reward[i] * do_table[i] *
             ActionProbability(model, policy, obs.data(), space.rank());
  }
  return value;
}

double PolicyValue(const PostModel& model, const Policy& policy,
                   std::int64_t budget) {
  if (!model.has_reward()) throw std::invalid_argument("model has no reward");
  return PolicyValue(model, policy, DoTable(model, budget), model.reward());
}

std::vector<int> SampleTrajectory(const PostModel& model,
                                  const ActionChooser& chooser,
                                  SplitMixRng& rng) {
  std::vector<int> values(model.num_variables(), 0);
  for (int t = 0; t < model.num_variables(); ++t) {
    const VariableSpec& v = model.variable(t);
    if (v.is_action()) {
      values[t] = chooser(t, values, rng);
    } else {
      std::int64_t row = model.InfoRow(t, values.data());
      values[t] = rng.Categorical(model.kernel(t).data() + row * v.cardinality,
                                  v.cardinality);
    }
  }
  return values;
}

std::vector<int> SampleTrajectory(const PostModel& model, const Policy& policy,
                                  SplitMixRng& rng) {
  return SampleTrajectory(
      model,
      [&](int t, const std::vector<int>& values, SplitMixRng& r) {
        std::int64_t row = model.InfoRow(t, values.data());
        int card = model.variable(t).cardinality;
        return r.Categorical(policy.tables[t].data() + row * card, card);
      },
      rng);
}

ConditionalTable ConditionalFutureTable(const PostModel& model,
                                        const std::vector<int>& condition_vars,
                                        const std::vector<int>& target_positions,
                                        std::int64_t budget) {
  std::vector<int> cond_cards;
  for (int t : condition_vars) {
    cond_cards.push_back(model.variable(t).cardinality);
  }
  std::vector<int> target_cards;
  std::vector<int> target_vars;
  std::int64_t target_actions = 1;
  for (int p : target_positions) {
    int t = model.observable_variable(p);
    for (int c : condition_vars) {
      if (c == t) throw std::invalid_argument("target overlaps the condition");
    }
    target_vars.push_back(t);
    target_cards.push_back(model.position_card(p));
    if (model.is_action_position(p)) {
      target_actions *= model.position_card(p);
    }
  }
  ProductSpace cond_space(cond_cards);
  ProductSpace target_space(target_cards);
  CheckBudget("conditional table",
              SafeMul(cond_space.size(), target_space.size()), budget);
  Eigen::MatrixXd joint =
      Eigen::MatrixXd::Zero(target_space.size(), cond_space.size());
  std::vector<double> mass(cond_space.size(), 0.0);
  EnumerateJoint(model, budget, [&](const int* values, double w) {
    std::int64_t ci = 0;
    for (std::size_t j = 0; j < condition_vars.size(); ++j) {
      ci = ci * cond_cards[j] + values[condition_vars[j]];
    }
    std::int64_t ti = 0;
    for (std::size_t j = 0; j < target_vars.size(); ++j) {
      ti = ti * target_cards[j] + values[target_vars[j]];
    }
    joint(ti, ci) += w;
    mass[ci] += w;
  });
  std::int64_t free_actions = 1;
  for (int t = 0; t < model.num_variables(); ++t) {
    if (!model.variable(t).is_action()) continue;
    bool in_cond = false;
    for (int c : condition_vars) in_cond = in_cond || c == t;
    if (!in_cond) free_actions *= model.variable(t).cardinality;
  }
  ConditionalTable result;
  result.table = Eigen::MatrixXd::Zero(target_space.size(), cond_space.size());
  result.column_mass.resize(cond_space.size());
  for (std::int64_t c = 0; c < cond_space.size(); ++c) {
    result.column_mass[c] = mass[c] / static_cast<double>(free_actions);
    if (mass[c] <= 0.0) continue;
    result.table.col(c) =
        joint.col(c) * (static_cast<double>(target_actions) / mass[c]);
  }
  return result;
}

}  // namespace istruct
