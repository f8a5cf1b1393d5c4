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

#ifndef ISTRUCT_EQUILIBRIA_H_
#define ISTRUCT_EQUILIBRIA_H_

#include <cstdint>
#include <string>
#include <vector>

#include "istruct/common.h"
#include "istruct/learner.h"
#include "istruct/model.h"
#include "istruct/planning.h"

namespace istruct {

enum class EquilibriumKind { kNash, kCce };
std::string KindName(EquilibriumKind kind);

// The game restricted to deterministic policies. Profiles are indexed by a
// ProductSpace over agents, agent 0 most significant; each agent's policies
// follow its PolicySpace order.
class NormalForm {
 public:
  // `do_table` is the model's P(tau_H) over trajectory_space().
  NormalForm(const PosgModel& game, const std::vector<double>& do_table,
             std::int64_t budget = kDefaultBudget);

  int num_agents() const { return static_cast<int>(spaces_.size()); }
  std::int64_t num_profiles() const { return profiles_.size(); }
  std::int64_t num_policies(int i) const { return spaces_[i].size(); }
  const ProductSpace& profiles() const { return profiles_; }
  double payoff(int i, std::int64_t profile) const {
    return payoffs_[i][profile];
  }
  const std::vector<double>& payoffs(int i) const { return payoffs_[i]; }
  // Profile index with agent i's policy replaced by `policy`.
  std::int64_t Replace(std::int64_t profile, int i, std::int64_t policy) const;
  // Joint deterministic policy of a profile.
  DeterministicPolicy JointPolicy(std::int64_t profile) const;

 private:
  const PosgModel* game_;
  std::vector<PolicySpace> spaces_;
  ProductSpace profiles_;
  std::vector<std::int64_t> strides_;
  std::vector<std::vector<double>> payoffs_;
};

// A randomized joint policy driven by seeds. Correlated policies draw one
// shared seed; independent ones draw a seed per agent. Each seed value maps to
// a deterministic policy: a profile index for the shared seed, an agent
// policy index for per-agent seeds. Only seed values with positive
// probability are kept.
struct SeededJointPolicy {
  EquilibriumKind kind = EquilibriumKind::kCce;
  // One entry for a shared seed, one per agent otherwise.
  std::vector<std::vector<double>> seed_probs;
  std::vector<std::vector<std::int64_t>> seed_policies;
};

// Distribution over profiles induced by the seeds.
std::vector<double> ProfileDistribution(const NormalForm& nf,
                                        const SeededJointPolicy& policy);

// V^i of a profile distribution.
double AgentValue(const NormalForm& nf, const std::vector<double>& dist, int i);

// max over agent i's deterministic policies of V^i when the others keep
// playing their part of `dist`.
double BestResponseValue(const NormalForm& nf, const std::vector<double>& dist,
                         int i);

// Per-agent gap V^{i,dagger}(pi^{-i}) - V^i(pi).
std::vector<double> EquilibriumGaps(const NormalForm& nf,
                                    const std::vector<double>& dist);

struct EquilibriumReport {
  EquilibriumKind kind = EquilibriumKind::kCce;
  SeededJointPolicy policy;
  std::vector<double> values;
  std::vector<double> best_responses;
  std::vector<double> gaps;
  // max_i gap.
  double certified_epsilon = 0.0;
  bool exact_fallback = false;
};

struct EquilibriumOptions {
  // Solve with rational arithmetic from the start.
  bool force_exact = false;
  double gap_tolerance = 1e-8;
  std::int64_t budget = kDefaultBudget;
};

// CCE: welfare-maximizing correlated distribution over profiles from a linear
// program on the induced normal form. NE: minimax strategies of a two-player
// constant-sum game; other games throw Unsupported. When the floating-point
// solution's gap exceeds the tolerance the program is re-solved exactly.
EquilibriumReport ComputeEquilibrium(const PosgModel& game,
                                     const std::vector<double>& do_table,
                                     EquilibriumKind kind,
                                     const EquilibriumOptions& options = {});
EquilibriumReport ComputeEquilibrium(const NormalForm& nf, EquilibriumKind kind,
                                     const EquilibriumOptions& options = {});

// Gaps and values of a fixed policy under another model's dynamics.
EquilibriumReport Certify(const NormalForm& nf, const SeededJointPolicy& policy);

// The game extended with seed variables placed before everything else: one
// observable seed in every agent's information for a shared seed, one per
// agent seen only by that agent otherwise. The returned deterministic policy
// of the extended game plays the seeded policy.
struct SeededGame {
  PosgModel game;
  DeterministicPolicy policy;
  // Number of seed variables prepended.
  int num_seeds = 0;
};
SeededGame MaterializeSeeds(const PosgModel& game, const NormalForm& nf,
                            const SeededJointPolicy& policy);

struct SelfPlayResult {
  LearnResult learn;
  EquilibriumReport estimated;
  // Evaluation on the true model; empty when no truth is supplied.
  std::vector<double> true_values;
  std::vector<double> true_best_responses;
  std::vector<double> true_gaps;
  double true_epsilon = 0.0;
  // max over deterministic joint policies of the total variation between the
  // estimate and the truth.
  double max_tv = 0.0;
  // |V^{i,dagger}_est - V^{i,dagger}_true| for each agent.
  std::vector<double> best_response_shift;
  // The shift stays within epsilon/2 or the total variation exceeds it.
  bool proof_chain_holds = true;
};

// UCB self-play: the learning loop with a termination threshold of
// epsilon/4, then an equilibrium of the selected estimate. `game` carries the
// agents and rewards; its dynamics are never used. `evaluation_truth` only
// fills the evaluation fields.
SelfPlayResult SelfPlay(Environment& env, const HypothesisClass& cls,
                        const PosgModel& game, LearnerConfig config,
                        EquilibriumKind kind,
                        const PosgModel* evaluation_truth = nullptr,
                        const EquilibriumOptions& options = {});

}  // namespace istruct

#endif  // ISTRUCT_EQUILIBRIA_H_
