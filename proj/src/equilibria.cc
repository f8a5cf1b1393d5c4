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

#include "istruct/equilibria.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gmpxx.h>

#include "istruct/dynamics.h"
#include "istruct/lp.h"

namespace istruct {
namespace {

constexpr double kConstantSumTolerance = 1e-9;

template <typename Scalar>
Scalar ToScalar(double v) {
  return Scalar(v);
}

double ToDouble(double v) { return v; }
double ToDouble(const mpq_class& v) { return v.get_d(); }

template <typename Scalar>
std::vector<Scalar> SolveCce(const NormalForm& nf) {
  const std::int64_t n = nf.num_profiles();
  LpProblem<Scalar> lp;
  lp.num_vars = static_cast<int>(n);
  lp.objective.assign(n, Scalar(0));
  for (std::int64_t p = 0; p < n; ++p) {
    for (int i = 0; i < nf.num_agents(); ++i) {
      lp.objective[p] += ToScalar<Scalar>(nf.payoff(i, p));
    }
  }
  // sum_p x_p (u_i(d, p_{-i}) - u_i(p)) <= 0 for every agent and deviation.
  for (int i = 0; i < nf.num_agents(); ++i) {
    for (std::int64_t d = 0; d < nf.num_policies(i); ++d) {
      std::vector<Scalar> row(n);
      for (std::int64_t p = 0; p < n; ++p) {
        row[p] = ToScalar<Scalar>(nf.payoff(i, nf.Replace(p, i, d))) -
                 ToScalar<Scalar>(nf.payoff(i, p));
      }
      lp.le_lhs.push_back(std::move(row));
      lp.le_rhs.push_back(Scalar(0));
    }
  }
  lp.eq_lhs.push_back(std::vector<Scalar>(n, Scalar(1)));
  lp.eq_rhs.push_back(Scalar(1));
  LpSolution<Scalar> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) return {};
  return sol.x;
}

// Maximin strategy of agent i in a two-player game. Payoffs are shifted by
// one so the value variable is positive.
template <typename Scalar>
std::vector<Scalar> SolveMaximin(const NormalForm& nf, int i) {
  const int j = 1 - i;
  const std::int64_t n = nf.num_policies(i);
  LpProblem<Scalar> lp;
  lp.num_vars = static_cast<int>(n + 1);
  lp.objective.assign(n + 1, Scalar(0));
  lp.objective[n] = 1;
  std::int64_t base = 0;
  for (std::int64_t b = 0; b < nf.num_policies(j); ++b) {
    std::vector<Scalar> row(n + 1);
    std::int64_t with_b = nf.Replace(base, j, b);
    for (std::int64_t a = 0; a < n; ++a) {
      row[a] = -(ToScalar<Scalar>(nf.payoff(i, nf.Replace(with_b, i, a))) +
                 Scalar(1));
    }
    row[n] = 1;
    lp.le_lhs.push_back(std::move(row));
    lp.le_rhs.push_back(Scalar(0));
  }
  std::vector<Scalar> sum(n + 1, Scalar(1));
  sum[n] = 0;
  lp.eq_lhs.push_back(std::move(sum));
  lp.eq_rhs.push_back(Scalar(1));
  LpSolution<Scalar> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) return {};
  sol.x.resize(n);
  return sol.x;
}

// Keeps positive entries as seed values.
template <typename Scalar>
void ToSeed(const std::vector<Scalar>& x, std::vector<double>& probs,
            std::vector<std::int64_t>& policies) {
  probs.clear();
  policies.clear();
  double total = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (ToDouble(x[k]) > 0.0) {
      probs.push_back(ToDouble(x[k]));
      policies.push_back(static_cast<std::int64_t>(k));
      total += probs.back();
    }
  }
  for (double& p : probs) p /= total;
}

template <typename Scalar>
bool SolveInto(const NormalForm& nf, EquilibriumKind kind,
               SeededJointPolicy& out) {
  out.kind = kind;
  out.seed_probs.clear();
  out.seed_policies.clear();
  if (kind == EquilibriumKind::kCce) {
    std::vector<Scalar> x = SolveCce<Scalar>(nf);
    if (x.empty()) return false;
    out.seed_probs.resize(1);
    out.seed_policies.resize(1);
    ToSeed(x, out.seed_probs[0], out.seed_policies[0]);
    return true;
  }
  out.seed_probs.resize(nf.num_agents());
  out.seed_policies.resize(nf.num_agents());
  for (int i = 0; i < nf.num_agents(); ++i) {
    std::vector<Scalar> x = SolveMaximin<Scalar>(nf, i);
    if (x.empty()) return false;
    ToSeed(x, out.seed_probs[i], out.seed_policies[i]);
  }
  return true;
}

void CheckNashSupported(const NormalForm& nf) {
  if (nf.num_agents() != 2) {
    throw Unsupported("Nash equilibria are computed for two-player games only");
  }
  double c = nf.payoff(0, 0) + nf.payoff(1, 0);
  for (std::int64_t p = 0; p < nf.num_profiles(); ++p) {
    if (std::abs(nf.payoff(0, p) + nf.payoff(1, p) - c) >
        kConstantSumTolerance) {
      throw Unsupported(
          "Nash equilibria are computed for constant-sum games only");
    }
  }
}

SeededJointPolicy SingleAgentOptimum(const NormalForm& nf,
                                     EquilibriumKind kind) {
  std::int64_t best = 0;
  for (std::int64_t p = 1; p < nf.num_profiles(); ++p) {
    if (nf.payoff(0, p) > nf.payoff(0, best) + 1e-12) best = p;
  }
  SeededJointPolicy out;
  out.kind = kind;
  out.seed_probs = {{1.0}};
  out.seed_policies = {{best}};
  return out;
}

}  // namespace

std::string KindName(EquilibriumKind kind) {
  return kind == EquilibriumKind::kNash ? "NE" : "CCE";
}

NormalForm::NormalForm(const PosgModel& game,
                       const std::vector<double>& do_table,
                       std::int64_t budget)
    : game_(&game) {
  const PostModel& post = game.post();
  std::vector<int> sizes;
  std::int64_t total = 1;
  std::int64_t deviations = 0;
  for (int i = 0; i < game.num_agents(); ++i) {
    spaces_.emplace_back(post, game.agent_actions(i));
    CheckBudget("agent policy enumeration", spaces_.back().size(), budget);
    sizes.push_back(static_cast<int>(spaces_.back().size()));
    total = SafeMul(total, spaces_.back().size());
    deviations += spaces_.back().size();
  }
  CheckBudget("induced normal form",
              SafeMul(total, post.trajectory_space().size()), budget);
  CheckBudget("equilibrium program", SafeMul(total, deviations + 1), budget);
  profiles_ = ProductSpace(sizes);
  strides_.assign(sizes.size(), 1);
  for (int i = static_cast<int>(sizes.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * sizes[i + 1];
  }
  std::vector<std::vector<double>> weights;
  for (int i = 0; i < game.num_agents(); ++i) {
    weights.push_back(Product(game.reward(i), do_table));
  }
  payoffs_.assign(game.num_agents(), std::vector<double>(total));
  DeterministicPolicy det = ZeroPolicy(post);
  for (std::int64_t p = 0; p < total; ++p) {
    std::vector<int> digits = profiles_.Decode(p);
    for (int i = 0; i < game.num_agents(); ++i) spaces_[i].Decode(digits[i], det);
    for (int i = 0; i < game.num_agents(); ++i) {
      payoffs_[i][p] = DeterministicValue(post, det, weights[i]);
    }
  }
}

std::int64_t NormalForm::Replace(std::int64_t profile, int i,
                                 std::int64_t policy) const {
  std::int64_t current = (profile / strides_[i]) % profiles_.card(i);
  return profile + (policy - current) * strides_[i];
}

DeterministicPolicy NormalForm::JointPolicy(std::int64_t profile) const {
  DeterministicPolicy det = ZeroPolicy(game_->post());
  std::vector<int> digits = profiles_.Decode(profile);
  for (int i = 0; i < num_agents(); ++i) spaces_[i].Decode(digits[i], det);
  return det;
}

std::vector<double> ProfileDistribution(const NormalForm& nf,
                                        const SeededJointPolicy& policy) {
  std::vector<double> dist(nf.num_profiles(), 0.0);
  if (policy.seed_probs.size() == 1 && policy.kind == EquilibriumKind::kCce) {
    for (std::size_t w = 0; w < policy.seed_probs[0].size(); ++w) {
      dist[policy.seed_policies[0][w]] += policy.seed_probs[0][w];
    }
    return dist;
  }
  const int n = nf.num_agents();
  std::vector<int> sizes;
  for (int i = 0; i < n; ++i) {
    sizes.push_back(static_cast<int>(policy.seed_probs[i].size()));
  }
  ProductSpace seeds(sizes);
  std::vector<int> w(n, 0);
  do {
    double prob = 1.0;
    std::int64_t profile = 0;
    for (int i = 0; i < n; ++i) {
      prob *= policy.seed_probs[i][w[i]];
      profile = nf.Replace(profile, i, policy.seed_policies[i][w[i]]);
    }
    dist[profile] += prob;
  } while (seeds.Next(w));
  return dist;
}

double AgentValue(const NormalForm& nf, const std::vector<double>& dist,
                  int i) {
  double v = 0.0;
  for (std::int64_t p = 0; p < nf.num_profiles(); ++p) {
    if (dist[p] != 0.0) v += dist[p] * nf.payoff(i, p);
  }
  return v;
}

double BestResponseValue(const NormalForm& nf, const std::vector<double>& dist,
                         int i) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t d = 0; d < nf.num_policies(i); ++d) {
    double v = 0.0;
    for (std::int64_t p = 0; p < nf.num_profiles(); ++p) {
      if (dist[p] != 0.0) v += dist[p] * nf.payoff(i, nf.Replace(p, i, d));
    }
    best = std::max(best, v);
  }
  return best;
}

std::vector<double> EquilibriumGaps(const NormalForm& nf,
                                    const std::vector<double>& dist) {
  std::vector<double> gaps;
  for (int i = 0; i < nf.num_agents(); ++i) {
    gaps.push_back(BestResponseValue(nf, dist, i) - AgentValue(nf, dist, i));
  }
  return gaps;
}

EquilibriumReport Certify(const NormalForm& nf,
                          const SeededJointPolicy& policy) {
  EquilibriumReport report;
  report.kind = policy.kind;
  report.policy = policy;
  std::vector<double> dist = ProfileDistribution(nf, policy);
  for (int i = 0; i < nf.num_agents(); ++i) {
    report.values.push_back(AgentValue(nf, dist, i));
    report.best_responses.push_back(BestResponseValue(nf, dist, i));
    report.gaps.push_back(report.best_responses.back() - report.values.back());
  }
  report.certified_epsilon =
      report.gaps.empty()
          ? 0.0
          : *std::max_element(report.gaps.begin(), report.gaps.end());
  return report;
}

EquilibriumReport ComputeEquilibrium(const NormalForm& nf, EquilibriumKind kind,
                                     const EquilibriumOptions& options) {
  if (nf.num_agents() == 1) {
    return Certify(nf, SingleAgentOptimum(nf, kind));
  }
  if (kind == EquilibriumKind::kNash) CheckNashSupported(nf);
  SeededJointPolicy policy;
  bool solved = false;
  if (!options.force_exact) {
    solved = SolveInto<double>(nf, kind, policy);
    if (solved) {
      EquilibriumReport report = Certify(nf, policy);
      if (report.certified_epsilon <= options.gap_tolerance) return report;
    }
  }
  if (!SolveInto<mpq_class>(nf, kind, policy)) {
    throw std::runtime_error("equilibrium program has no solution");
  }
  EquilibriumReport report = Certify(nf, policy);
  report.exact_fallback = !options.force_exact;
  return report;
}

EquilibriumReport ComputeEquilibrium(const PosgModel& game,
                                     const std::vector<double>& do_table,
                                     EquilibriumKind kind,
                                     const EquilibriumOptions& options) {
  NormalForm nf(game, do_table, options.budget);
  return ComputeEquilibrium(nf, kind, options);
}

SeededGame MaterializeSeeds(const PosgModel& game, const NormalForm& nf,
                            const SeededJointPolicy& policy) {
  const PostModel& post = game.post();
  const bool shared = policy.kind == EquilibriumKind::kCce;
  const int num_seeds = static_cast<int>(policy.seed_probs.size());
  std::vector<VariableSpec> vars;
  std::vector<std::vector<double>> kernels;
  for (int s = 0; s < num_seeds; ++s) {
    VariableSpec v;
    v.kind = VarKind::kSystem;
    v.cardinality = static_cast<int>(policy.seed_probs[s].size());
    v.observable = true;
    v.name = num_seeds == 1 ? "seed" : "seed" + std::to_string(s + 1);
    vars.push_back(v);
    kernels.push_back(policy.seed_probs[s]);
  }
  for (int t = 0; t < post.num_variables(); ++t) {
    VariableSpec v = post.variable(t);
    for (int& j : v.info_set) j += num_seeds;
    if (v.is_action()) {
      int agent = game.AgentOf(t);
      v.info_set.insert(v.info_set.begin(), shared ? 0 : agent);
    }
    vars.push_back(v);
    kernels.push_back(post.kernel(t));
  }

  std::int64_t seed_count = 1;
  for (int s = 0; s < num_seeds; ++s) {
    seed_count *= static_cast<std::int64_t>(policy.seed_probs[s].size());
  }
  const std::int64_t inner = post.trajectory_space().size();
  std::vector<std::vector<double>> rewards;
  for (int i = 0; i < game.num_agents(); ++i) {
    std::vector<double> r(seed_count * inner);
    for (std::int64_t w = 0; w < seed_count; ++w) {
      std::copy(game.reward(i).begin(), game.reward(i).end(),
                r.begin() + w * inner);
    }
    rewards.push_back(std::move(r));
  }
  std::vector<std::vector<int>> agents;
  for (int i = 0; i < game.num_agents(); ++i) {
    std::vector<int> a = game.agent_actions(i);
    for (int& t : a) t += num_seeds;
    agents.push_back(a);
  }
  SeededGame out;
  out.num_seeds = num_seeds;
  out.game = PosgModel(PostModel(vars, kernels), agents, rewards);

  // Per seed value, the deterministic policy it selects.
  std::vector<std::vector<DeterministicPolicy>> selected(num_seeds);
  for (int s = 0; s < num_seeds; ++s) {
    for (std::int64_t k : policy.seed_policies[s]) {
      std::int64_t profile = shared ? k : nf.Replace(0, s, k);
      selected[s].push_back(nf.JointPolicy(profile));
    }
  }
  const PostModel& ext = out.game.post();
  out.policy = ZeroPolicy(ext);
  for (int t = 0; t < post.num_variables(); ++t) {
    if (!post.variable(t).is_action()) continue;
    int s = shared ? 0 : game.AgentOf(t);
    std::int64_t rows = post.info_space(t).size();
    std::vector<int>& table = out.policy.choice[t + num_seeds];
    for (std::size_t w = 0; w < selected[s].size(); ++w) {
      for (std::int64_t r = 0; r < rows; ++r) {
        table[w * rows + r] = selected[s][w].choice[t][r];
      }
    }
  }
  return out;
}

SelfPlayResult SelfPlay(Environment& env, const HypothesisClass& cls,
                        const PosgModel& game, LearnerConfig config,
                        EquilibriumKind kind,
                        const PosgModel* evaluation_truth,
                        const EquilibriumOptions& options) {
  config.termination_fraction = 0.25;
  SelfPlayResult result;
  result.learn = UcbLearn(env, cls, config, {},
                          evaluation_truth ? &evaluation_truth->post() : nullptr);
  const std::vector<double>& est_table = cls.do_table(result.learn.estimate);
  NormalForm est_nf(game, est_table, options.budget);
  result.estimated = ComputeEquilibrium(est_nf, kind, options);
  if (evaluation_truth == nullptr) return result;

  std::vector<double> true_table =
      DoTable(evaluation_truth->post(), options.budget);
  NormalForm true_nf(*evaluation_truth, true_table, options.budget);
  EquilibriumReport truth = Certify(true_nf, result.estimated.policy);
  result.true_values = truth.values;
  result.true_best_responses = truth.best_responses;
  result.true_gaps = truth.gaps;
  result.true_epsilon = truth.certified_epsilon;
  result.max_tv = MaxPolicyTotalVariation(cls.structure(), est_table,
                                          true_table, options.budget);
  for (int i = 0; i < game.num_agents(); ++i) {
    double shift = std::abs(result.estimated.best_responses[i] -
                            truth.best_responses[i]);
    result.best_response_shift.push_back(shift);
    if (result.max_tv <= config.epsilon / 2 &&
        shift > config.epsilon / 2 + kDerivedTolerance) {
      result.proof_chain_holds = false;
    }
  }
  return result;
}

}  // namespace istruct
