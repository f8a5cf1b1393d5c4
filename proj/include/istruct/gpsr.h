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

#ifndef ISTRUCT_GPSR_H_
#define ISTRUCT_GPSR_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "istruct/common.h"
#include "istruct/info_graph.h"
#include "istruct/model.h"

namespace istruct {

// m-step core tests after the first h observables: every assignment of
// positions [h, min(h + m, H)). When the window reaches the horizon the tests
// are all full futures.
struct CoreTests {
  int h = 0;
  int begin = 0;
  int end = 0;
  ProductSpace space;
  std::int64_t action_count = 1;
  bool full_future = false;
};
CoreTests MakeCoreTests(const PostModel& model, int h, int m);

// G_h[q, i] = P(obs(q) | i; do(act(q))) with the minimal separator i.
struct GStep {
  int h = 0;
  Separator separator;
  CoreTests tests;
  Eigen::MatrixXd g;
  // sigma_{|I_h|}(G_h); zero when |Q_h| < |I_h|.
  double sigma = 0.0;
  // True for steps whose test window ends before the horizon; only these
  // steps determine the revealing constant.
  bool gated = false;
  // Separator assignments with zero probability.
  int zero_columns = 0;
};
GStep ComputeGStep(const PostModel& model, int h, int m,
                   std::int64_t budget = kDefaultBudget);

struct RevealingReport {
  int m = 1;
  double alpha = 0.0;
  bool passed = false;
  // min sigma over gated steps (+inf when none are gated).
  double min_sigma = std::numeric_limits<double>::infinity();
  // First gated step below alpha, or -1.
  int failing_h = -1;
  std::vector<GStep> steps;
};
RevealingReport WeaklyRevealingCheck(const PostModel& model, int m,
                                     double alpha,
                                     std::int64_t budget = kDefaultBudget);

// Generalized predictive state representation over observable positions.
// psi_0 has dimension d_0; ops[h][x] (h = 1..H-1) maps d_{h-1} to d_h for
// value x of position h-1; column x of `final_weights` is phi_H(x) for value
// x of the last position.
struct GpsrModel {
  int m = 1;
  std::vector<int> cards;
  std::vector<bool> is_action;
  std::vector<int> dims;
  std::vector<std::int64_t> test_actions;
  Eigen::VectorXd psi0;
  std::vector<std::vector<Eigen::MatrixXd>> ops;
  Eigen::MatrixXd final_weights;
  // phi_h for h = 0..H-1.
  std::vector<Eigen::VectorXd> phi;
  // Construction diagnostics.
  std::vector<Separator> separators;
  std::vector<double> sigmas;
  std::vector<bool> gated;
  double alpha = std::numeric_limits<double>::infinity();

  int horizon() const { return static_cast<int>(cards.size()); }
};

// Exact representation from a model. Refused when a gated step has
// sigma_{|I_h|}(G_h) below max(alpha_reveal, 1e-10).
GpsrModel ConstructGpsrFromPost(const PostModel& model, int m,
                                double alpha_reveal = 0.0,
                                std::int64_t budget = kDefaultBudget);

// P(prefix) for a prefix of length h in 0..H (values by position).
double PsrProbability(const GpsrModel& psr, const int* prefix, int h);
double PsrProbability(const GpsrModel& psr, const std::vector<int>& prefix);

// psi_h for a prefix of length h < H.
Eigen::VectorXd PredictionVector(const GpsrModel& psr, const int* prefix, int h);

struct PredictionFeature {
  Eigen::VectorXd psi;
  double probability = 0.0;
  // psi / probability; empty on zero support.
  std::optional<Eigen::VectorXd> psi_bar;
};
// Probabilities at or below this value count as zero support.
inline constexpr double kZeroSupport = 1e-14;
PredictionFeature ComputePredictionFeature(const GpsrModel& psr,
                                           const int* prefix, int h);

// Rows m_h(omega)^T for every full future omega of positions [h, H).
Eigen::MatrixXd FutureWeights(const GpsrModel& psr, int h);

// Interventional probabilities of all observable trajectories.
std::vector<double> PsrDoTable(const GpsrModel& psr);

struct GammaReport {
  // Condition on futures: max over vertices z and causal deterministic
  // future policies of sum_omega pi(omega) |m_h(omega)^T z|, h = 0..H-1.
  std::vector<double> future_norm;
  // Condition on one step: max over vertices z of the policy-weighted
  // l1 norm of M_h(x) z, h = 1..H-1 (entry 0 unused).
  std::vector<double> step_norm;
  // Largest gamma satisfying both conditions at each step.
  std::vector<double> step_gamma;
  double gamma = 0.0;
  // alpha / max over gated steps of sqrt(|I_h|), or 1 without gated steps.
  double theorem_gamma = 1.0;
};
GammaReport MeasureGamma(const GpsrModel& psr);

// Value of the future condition for an arbitrary direction z in R^{d_h}.
double FutureNormValue(const GpsrModel& psr, int h, const Eigen::VectorXd& z);
// Value of the one-step condition for an arbitrary z in R^{d_{h-1}}.
double StepNormValue(const GpsrModel& psr, int h, const Eigen::VectorXd& z);

// Spectral representation from truncated SVDs of the dynamics matrices:
// b_0 = U_0^T D_0^T, B_h(x) = U_h^T [U_{h-1}]_{(x, F_h)}, and
// v_h = U_h^T 1 / |F_h^a|, for h = 1..H.
struct OomModel {
  std::vector<int> cards;
  std::vector<bool> is_action;
  std::vector<int> ranks;
  Eigen::VectorXd b0;
  // ops[h][x] for h = 1..H.
  std::vector<std::vector<Eigen::MatrixXd>> ops;
  std::vector<Eigen::VectorXd> v;

  int horizon() const { return static_cast<int>(cards.size()); }
};
OomModel ConstructOom(const PostModel& model,
                      std::int64_t budget = kDefaultBudget);
double OomProbability(const OomModel& oom, const int* prefix, int h);

struct OomCheck {
  double max_operator_norm = 0.0;
  double b0_norm = 0.0;
  double b0_bound = 0.0;
  // max_h ||v_h|| / sqrt(|F_h^o| / |F_h^a|).
  double max_v_ratio = 0.0;
  double recursion_error = 0.0;
  double probability_error = 0.0;
  bool ok = false;
};
OomCheck CheckOom(const OomModel& oom, const PostModel& model,
                  const std::vector<double>& do_table);

// Little-endian dump: magic "ISTPSR01", int32 H, int32 m, int32 cards[H],
// int32 dims[H], psi_0, then ops[h][x] row-major for h = 1..H-1 and each x,
// then final_weights row-major. All matrices are float64.
void WriteGpsrBinary(const GpsrModel& psr, std::ostream& out);

}  // namespace istruct

#endif  // ISTRUCT_GPSR_H_
