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

#ifndef ISTRUCT_LEARNER_H_
#define ISTRUCT_LEARNER_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "istruct/common.h"
#include "istruct/gpsr.h"
#include "istruct/model.h"
#include "istruct/rng.h"

namespace istruct {

// Finite set of candidate models sharing one variable structure. Each
// candidate is turned into its exact predictive representation, and all
// quantities the learner needs from a candidate are tabulated up front.
class HypothesisClass {
 public:
  // Throws ConstructionRefused if a candidate fails the revealing check and
  // ValidationError if structures differ.
  HypothesisClass(std::vector<PostModel> candidates, int m, double alpha_reveal,
                  std::int64_t budget = kDefaultBudget);

  int size() const { return static_cast<int>(entries_.size()); }
  int m() const { return m_; }
  double alpha_reveal() const { return alpha_reveal_; }
  // Structure shared by all candidates (the first candidate).
  const PostModel& structure() const { return entries_[0].model; }
  const PostModel& model(int c) const { return entries_[c].model; }
  const GpsrModel& psr(int c) const { return entries_[c].psr; }
  double gamma(int c) const { return entries_[c].gamma; }
  // P(tau_H) over trajectory_space(), computed from the representation.
  const std::vector<double>& do_table(int c) const {
    return entries_[c].do_table;
  }
  // P(tau_h) for every prefix of length h in 0..H.
  const std::vector<double>& prefix_probs(int c, int h) const {
    return entries_[c].prefix_probs[h];
  }
  // Columns psi_bar(tau_h) for h in 0..H-1; zero columns on zero support.
  const Eigen::MatrixXd& features(int c, int h) const {
    return entries_[c].features[h];
  }

  // Marks candidates whose kernels equal the given model's to within 1e-12.
  void MarkTruth(const PostModel& truth);
  bool contains_truth(int c) const { return entries_[c].is_truth; }
  int truth_index() const;

 private:
  struct Entry {
    PostModel model;
    GpsrModel psr;
    double gamma = 0.0;
    std::vector<double> do_table;
    std::vector<std::vector<double>> prefix_probs;
    std::vector<Eigen::MatrixXd> features;
    bool is_truth = false;
  };
  int m_;
  double alpha_reveal_;
  std::vector<Entry> entries_;
};

// Black-box access to the true system. Only whole episodes can be drawn; the
// chooser sees the observable prefix and returns the value of the action at
// position p.
using EpisodeChooser =
    std::function<int(int p, const std::vector<int>& prefix, SplitMixRng& rng)>;
class Environment {
 public:
  explicit Environment(const PostModel& truth) : truth_(&truth) {}
  std::vector<int> CollectEpisode(const EpisodeChooser& chooser,
                                  SplitMixRng& rng);
  std::int64_t episodes() const { return episodes_; }

 private:
  const PostModel* truth_;
  std::int64_t episodes_ = 0;
};

// nu(pi, u_exp): follow `base` before position `start`, then play an action
// sequence drawn uniformly from `sequences` over the action positions in
// `window`, and act uniformly after it. Entry -1 in a sequence leaves the
// action at that position uniform.
struct CollectionPolicy {
  int start = 0;
  std::shared_ptr<const DeterministicPolicy> base;
  std::vector<int> window;
  std::vector<std::vector<int>> sequences;
  std::uint64_t seed = 0;
};

// Exploration sequences act(X_h x Q_h) union act(Q_{h-1}) for the episode
// that starts exploring at position `start` (0-based, one less than the
// observable step).
CollectionPolicy ExplorationPolicy(const PostModel& structure, int m, int start,
                                   std::shared_ptr<const DeterministicPolicy> base);

// Probability the collection policy assigns to the actions among the first
// `len` positions of an observable trajectory.
double CollectionProbability(const PostModel& structure,
                             const CollectionPolicy& policy, const int* obs,
                             int len);

// Action choice of the collection policy for position p.
int CollectionAction(const PostModel& structure, const CollectionPolicy& policy,
                     const std::vector<int>& sequence, int p,
                     const std::vector<int>& prefix, SplitMixRng& rng);

struct Episode {
  std::vector<int> obs;
  std::int64_t trajectory_index = 0;
  int policy_id = 0;
};

// D_h for h = 0..H-1; append-only. Policies are stored once and referenced.
struct Dataset {
  std::vector<std::vector<Episode>> steps;
  std::vector<CollectionPolicy> policies;

  std::int64_t num_episodes() const;
};

struct LearnerConfig {
  int iterations = 100;
  int m = 1;
  double epsilon = 0.1;
  double delta = 0.1;
  // Termination when the bonus value is at most this fraction of epsilon.
  double termination_fraction = 0.5;
  std::uint64_t seed = 0;
  std::int64_t budget = kDefaultBudget;
  // Unset parameters are derived with all constants equal to one.
  std::optional<double> p_min;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<double> beta;
};

struct LearnerParameters {
  double p_min = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::int64_t rank = 1;
  int d = 1;
  std::int64_t q_a = 1;
  int max_action_card = 1;
  int horizon = 1;
};
LearnerParameters DeriveParameters(const HypothesisClass& cls,
                                   const LearnerConfig& config);

struct MleResult {
  // Candidates meeting the probability floor on every dataset prefix.
  std::vector<int> theta_min;
  std::vector<int> confidence_set;
  int estimate = -1;
  std::vector<double> log_likelihood;
  // The floor had to be dropped because no candidate met it.
  bool relaxed = false;
};
MleResult ConstrainedMle(const HypothesisClass& cls, const Dataset& data,
                         double p_min, double beta);

// U_h = lambda I + sum over D_h of psi_bar psi_bar^T with candidate c's
// features.
std::vector<Eigen::MatrixXd> Covariances(const HypothesisClass& cls, int c,
                                         const Dataset& data, double lambda);

// Bonus min{alpha sqrt(sum_h ||psi_bar(tau_h)||^2_{U_h^-1}), 1} for every
// trajectory, indexed by trajectory_space(). Zero-support prefixes add
// nothing. `explicit_inverse` selects an explicit inverse instead of a
// Cholesky solve.
std::vector<double> BonusTable(const HypothesisClass& cls, int c,
                               const std::vector<Eigen::MatrixXd>& covariances,
                               double alpha, bool explicit_inverse = false);

struct IterationRecord {
  int k = 0;
  int estimate = -1;
  int confidence_size = 0;
  double bonus_value = 0.0;
  bool relaxed = false;
  std::int64_t episodes = 0;
  // Evaluation-only fields; NaN or false when the truth is not supplied.
  bool truth_in_theta_min = false;
  double suboptimality = std::numeric_limits<double>::quiet_NaN();
  double tv_squared_sum = std::numeric_limits<double>::quiet_NaN();
  double hellinger_sum = std::numeric_limits<double>::quiet_NaN();
};

struct LearnResult {
  bool terminated = false;
  int iterations = 0;
  int estimate = -1;
  // Iteration whose estimate is returned (the terminating one, or the one
  // with the smallest bonus value).
  int chosen_iteration = 0;
  DeterministicPolicy policy;
  double estimated_value = 0.0;
  LearnerParameters params;
  std::vector<IterationRecord> trace;
  Dataset dataset;
  std::int64_t episodes = 0;
};

// UCB exploration with constrained maximum likelihood. `reward` is indexed
// by trajectory_space(); when empty, no final planning is done. The optional
// `evaluation_truth` is used only to fill the evaluation fields of the
// trace, never by the learning loop.
LearnResult UcbLearn(Environment& env, const HypothesisClass& cls,
                     const LearnerConfig& config,
                     const std::vector<double>& reward,
                     const PostModel* evaluation_truth = nullptr);

// Bound on the total variation between two representations under a policy:
// |m_0^T (psi_0' - psi_0)| plus, for each step, the future weights of `est`
// applied to the operator difference on the prediction vectors of `truth`.
double OperatorErrorBound(const GpsrModel& est, const GpsrModel& truth,
                          const PostModel& structure, const Policy& policy);

// sum_tau |P_a(tau) - P_b(tau)| pi(tau) for a stochastic policy.
double PolicyTotalVariation(const PostModel& structure,
                            const std::vector<double>& do_table_a,
                            const std::vector<double>& do_table_b,
                            const Policy& policy);

}  // namespace istruct

#endif  // ISTRUCT_LEARNER_H_
