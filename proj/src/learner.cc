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

#include "istruct/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "istruct/dynamics.h"
#include "istruct/info_graph.h"
#include "istruct/planning.h"

namespace istruct {
namespace {

constexpr double kBonusTieTolerance = 1e-9;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool SameStructure(const PostModel& a, const PostModel& b) {
  if (a.num_variables() != b.num_variables()) return false;
  for (int t = 0; t < a.num_variables(); ++t) {
    const VariableSpec& u = a.variable(t);
    const VariableSpec& v = b.variable(t);
    if (u.kind != v.kind || u.cardinality != v.cardinality ||
        u.observable != v.observable || u.info_set != v.info_set) {
      return false;
    }
  }
  return true;
}

// Running log-likelihoods and prefix-probability minima per candidate.
class LikelihoodAccumulator {
 public:
  explicit LikelihoodAccumulator(const HypothesisClass& cls)
      : cls_(&cls),
        log_likelihood_(cls.size(), 0.0),
        min_prefix_(cls.size(), 1.0) {}

  void Add(const Dataset& data, int h, const Episode& e) {
    const PostModel& s = cls_->structure();
    const CollectionPolicy& policy = data.policies[e.policy_id];
    const int H = s.horizon();
    double full_actions = CollectionProbability(s, policy, e.obs.data(), H);
    double prefix_actions = CollectionProbability(s, policy, e.obs.data(), h);
    std::int64_t prefix_index = e.trajectory_index / s.PositionCount(h, H);
    for (int c = 0; c < cls_->size(); ++c) {
      double p = cls_->do_table(c)[e.trajectory_index] * full_actions;
      log_likelihood_[c] += p > 0.0 ? std::log(p) : kNegInf;
      double q = cls_->prefix_probs(c, h)[prefix_index] * prefix_actions;
      min_prefix_[c] = std::min(min_prefix_[c], q);
    }
  }

  MleResult Select(double p_min, double beta) const {
    MleResult r;
    r.log_likelihood = log_likelihood_;
    for (int c = 0; c < cls_->size(); ++c) {
      if (min_prefix_[c] >= p_min) r.theta_min.push_back(c);
    }
    if (r.theta_min.empty()) {
      r.relaxed = true;
      for (int c = 0; c < cls_->size(); ++c) {
        if (min_prefix_[c] > 0.0) r.theta_min.push_back(c);
      }
      if (r.theta_min.empty()) {
        for (int c = 0; c < cls_->size(); ++c) r.theta_min.push_back(c);
      }
    }
    double best = kNegInf;
    for (int c : r.theta_min) {
      if (r.estimate < 0 || log_likelihood_[c] > best) {
        best = log_likelihood_[c];
        r.estimate = c;
      }
    }
    for (int c : r.theta_min) {
      if (best == kNegInf || log_likelihood_[c] >= best - beta) {
        r.confidence_set.push_back(c);
      }
    }
    return r;
  }

 private:
  const HypothesisClass* cls_;
  std::vector<double> log_likelihood_;
  std::vector<double> min_prefix_;
};

// Evaluation-only diagnostics, accumulated per candidate.
class Diagnostics {
 public:
  Diagnostics(const HypothesisClass& cls, const PostModel& truth,
              std::int64_t budget)
      : cls_(&cls),
        truth_table_(DoTable(truth, budget)),
        tv_squared_(cls.size(), 0.0),
        hellinger_(cls.size(), 0.0) {
    const PostModel& s = cls.structure();
    for (int h = 0; h <= s.horizon(); ++h) {
      truth_prefix_.push_back(PrefixTable(truth_table_, s, h));
    }
  }

  const std::vector<double>& truth_table() const { return truth_table_; }

  void Add(const Dataset& data, int h, const Episode& e) {
    const PostModel& s = cls_->structure();
    const int H = s.horizon();
    const CollectionPolicy& policy = data.policies[e.policy_id];
    const ProductSpace& space = s.trajectory_space();
    std::int64_t futures = s.PositionCount(h, H);
    std::int64_t prefix = e.trajectory_index / futures;
    double prefix_actions = CollectionProbability(s, policy, e.obs.data(), h);
    std::vector<int> obs(H);
    // Action probabilities of every completion of the prefix and of every
    // trajectory.
    std::vector<double> completion(futures);
    for (std::int64_t w = 0; w < futures; ++w) {
      space.Decode(prefix * futures + w, obs.data());
      completion[w] = CollectionProbability(s, policy, obs.data(), H);
    }
    std::vector<double> full(space.size());
    std::vector<int> walk(H, 0);
    for (std::int64_t i = 0; i < space.size(); ++i, space.Next(walk)) {
      full[i] = CollectionProbability(s, policy, walk.data(), H);
    }
    double star_den = truth_prefix_[h][prefix] * prefix_actions;
    for (int c = 0; c < cls_->size(); ++c) {
      const std::vector<double>& est = cls_->do_table(c);
      double est_den = cls_->prefix_probs(c, h)[prefix] * prefix_actions;
      double tv = 2.0;
      if (est_den > 0.0 && star_den > 0.0) {
        tv = 0.0;
        for (std::int64_t w = 0; w < futures; ++w) {
          std::int64_t i = prefix * futures + w;
          tv += std::abs(est[i] * completion[w] / est_den -
                         truth_table_[i] * completion[w] / star_den);
        }
      }
      tv_squared_[c] += tv * tv;
      double hel = 0.0;
      for (std::int64_t i = 0; i < space.size(); ++i) {
        double a = std::sqrt(std::max(est[i] * full[i], 0.0));
        double b = std::sqrt(std::max(truth_table_[i] * full[i], 0.0));
        hel += (a - b) * (a - b);
      }
      hellinger_[c] += 0.5 * hel;
    }
  }

  double tv_squared(int c) const { return tv_squared_[c]; }
  double hellinger(int c) const { return hellinger_[c]; }

 private:
  const HypothesisClass* cls_;
  std::vector<double> truth_table_;
  std::vector<std::vector<double>> truth_prefix_;
  std::vector<double> tv_squared_;
  std::vector<double> hellinger_;
};

// Prefix visit counts per step, the sufficient statistic for covariances.
std::vector<std::vector<double>> PrefixCounts(const PostModel& s,
                                              const Dataset& data) {
  const int H = s.horizon();
  std::vector<std::vector<double>> counts(H);
  for (int h = 0; h < H; ++h) {
    counts[h].assign(s.PositionCount(0, h), 0.0);
    std::int64_t futures = s.PositionCount(h, H);
    for (const Episode& e : data.steps[h]) {
      counts[h][e.trajectory_index / futures] += 1.0;
    }
  }
  return counts;
}

std::vector<Eigen::MatrixXd> CovariancesFromCounts(
    const HypothesisClass& cls, int c,
    const std::vector<std::vector<double>>& counts, double lambda) {
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t h = 0; h < counts.size(); ++h) {
    const Eigen::MatrixXd& f = cls.features(c, static_cast<int>(h));
    Eigen::MatrixXd u = lambda * Eigen::MatrixXd::Identity(f.rows(), f.rows());
    for (std::size_t i = 0; i < counts[h].size(); ++i) {
      if (counts[h][i] == 0.0) continue;
      u.noalias() += counts[h][i] * f.col(i) * f.col(i).transpose();
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

HypothesisClass::HypothesisClass(std::vector<PostModel> candidates, int m,
                                 double alpha_reveal, std::int64_t budget)
    : m_(m), alpha_reveal_(alpha_reveal) {
  if (candidates.empty()) throw ValidationError("hypothesis class is empty");
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (c > 0 && !SameStructure(entries_[0].model, candidates[c])) {
      throw ValidationError("candidate " + std::to_string(c) +
                            " has a different variable structure");
    }
    Entry e;
    e.model = std::move(candidates[c]);
    try {
      e.psr = ConstructGpsrFromPost(e.model, m, alpha_reveal, budget);
    } catch (const ConstructionRefused& err) {
      throw ConstructionRefused("candidate " + std::to_string(c) + ": " +
                                err.what());
    }
    e.gamma = MeasureGamma(e.psr).gamma;
    e.do_table = PsrDoTable(e.psr);
    const int H = e.psr.horizon();
    Eigen::MatrixXd states = e.psr.psi0;
    for (int h = 0; h < H; ++h) {
      if (h > 0) {
        const int card = e.psr.cards[h - 1];
        Eigen::MatrixXd next(e.psr.dims[h], states.cols() * card);
        for (Eigen::Index i = 0; i < states.cols(); ++i) {
          for (int x = 0; x < card; ++x) {
            next.col(i * card + x) = e.psr.ops[h][x] * states.col(i);
          }
        }
        states = std::move(next);
      }
      Eigen::VectorXd probs = states.transpose() * e.psr.phi[h];
      e.prefix_probs.emplace_back(probs.data(), probs.data() + probs.size());
      Eigen::MatrixXd f = Eigen::MatrixXd::Zero(states.rows(), states.cols());
      for (Eigen::Index i = 0; i < states.cols(); ++i) {
        if (probs(i) > kZeroSupport) f.col(i) = states.col(i) / probs(i);
      }
      e.features.push_back(std::move(f));
    }
    e.prefix_probs.push_back(e.do_table);
    entries_.push_back(std::move(e));
  }
}

void HypothesisClass::MarkTruth(const PostModel& truth) {
  for (Entry& e : entries_) {
    e.is_truth = SameStructure(e.model, truth);
    for (int t = 0; e.is_truth && t < truth.num_variables(); ++t) {
      const std::vector<double>& a = e.model.kernel(t);
      const std::vector<double>& b = truth.kernel(t);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-12) {
          e.is_truth = false;
          break;
        }
      }
    }
  }
}

int HypothesisClass::truth_index() const {
  for (int c = 0; c < size(); ++c) {
    if (entries_[c].is_truth) return c;
  }
  return -1;
}

std::vector<int> Environment::CollectEpisode(const EpisodeChooser& chooser,
                                             SplitMixRng& rng) {
  const PostModel& model = *truth_;
  std::vector<int> prefix;
  std::vector<int> assignment = SampleTrajectory(
      model,
      [&](int t, const std::vector<int>& values, SplitMixRng& r) {
        int p = model.position(t);
        prefix.resize(p);
        for (int j = 0; j < p; ++j) {
          prefix[j] = values[model.observable_variable(j)];
        }
        return chooser(p, prefix, r);
      },
      rng);
  ++episodes_;
  return ObservablePart(model, assignment);
}

std::int64_t Dataset::num_episodes() const {
  std::int64_t n = 0;
  for (const auto& step : steps) n += static_cast<std::int64_t>(step.size());
  return n;
}

CollectionPolicy ExplorationPolicy(const PostModel& structure, int m, int start,
                                   std::shared_ptr<const DeterministicPolicy> base) {
  const int H = structure.horizon();
  CollectionPolicy policy;
  policy.start = start;
  policy.base = std::move(base);
  int end_long = std::min(start + m + 1, H);
  int end_short = std::min(start + m, H);
  std::vector<int> cards;
  for (int p = start; p < end_long; ++p) {
    if (structure.is_action_position(p)) {
      policy.window.push_back(p);
      cards.push_back(structure.position_card(p));
    }
  }
  std::set<std::vector<int>> sequences;
  ProductSpace full(cards);
  std::vector<int> u(cards.size(), 0);
  for (std::int64_t i = 0; i < full.size(); ++i, full.Next(u)) {
    sequences.insert(u);
    std::vector<int> shorter = u;
    for (std::size_t j = 0; j < shorter.size(); ++j) {
      if (policy.window[j] >= end_short) shorter[j] = -1;
    }
    sequences.insert(shorter);
  }
  policy.sequences.assign(sequences.begin(), sequences.end());
  return policy;
}

double CollectionProbability(const PostModel& structure,
                             const CollectionPolicy& policy, const int* obs,
                             int len) {
  double prob = 1.0;
  int before = std::min(policy.start, len);
  for (int p = 0; p < before; ++p) {
    if (!structure.is_action_position(p)) continue;
    int t = structure.observable_variable(p);
    if (policy.base->choice[t][structure.InfoRowFromObservables(t, obs)] !=
        obs[p]) {
      return 0.0;
    }
  }
  if (len <= policy.start) return prob;
  double mixture = 0.0;
  for (const std::vector<int>& u : policy.sequences) {
    double q = 1.0;
    for (std::size_t j = 0; j < policy.window.size() && q > 0.0; ++j) {
      int p = policy.window[j];
      if (p >= len) break;
      if (u[j] >= 0) {
        q *= u[j] == obs[p] ? 1.0 : 0.0;
      } else {
        q /= structure.position_card(p);
      }
    }
    mixture += q;
  }
  prob *= mixture / static_cast<double>(policy.sequences.size());
  int after = policy.window.empty() ? policy.start : policy.window.back() + 1;
  for (int p = std::max(after, policy.start); p < len; ++p) {
    if (structure.is_action_position(p)) prob /= structure.position_card(p);
  }
  return prob;
}

int CollectionAction(const PostModel& structure, const CollectionPolicy& policy,
                     const std::vector<int>& sequence, int p,
                     const std::vector<int>& prefix, SplitMixRng& rng) {
  int t = structure.observable_variable(p);
  if (p < policy.start) {
    return policy.base->choice[t][structure.InfoRowFromObservables(t, prefix.data())];
  }
  for (std::size_t j = 0; j < policy.window.size(); ++j) {
    if (policy.window[j] == p && sequence[j] >= 0) return sequence[j];
  }
  return rng.UniformInt(structure.position_card(p));
}

LearnerParameters DeriveParameters(const HypothesisClass& cls,
                                   const LearnerConfig& config) {
  const PostModel& s = cls.structure();
  LearnerParameters p;
  p.horizon = s.horizon();
  p.gamma = std::numeric_limits<double>::infinity();
  for (int c = 0; c < cls.size(); ++c) {
    p.gamma = std::min(p.gamma, cls.gamma(c));
    const GpsrModel& psr = cls.psr(c);
    for (int h = 0; h < psr.horizon(); ++h) {
      p.d = std::max(p.d, psr.dims[h]);
      p.q_a = std::max(p.q_a, psr.test_actions[h]);
      p.rank = std::max(p.rank, psr.separators[h].joint_size);
    }
  }
  for (int t = 0; t < s.num_variables(); ++t) {
    if (s.variable(t).is_action()) {
      p.max_action_card = std::max(p.max_action_card, s.variable(t).cardinality);
    }
  }
  const double K = config.iterations;
  const double H = p.horizon;
  const double A = p.max_action_card;
  const double Q = static_cast<double>(p.q_a);
  const double g = p.gamma;
  p.p_min = config.p_min.value_or(
      config.delta /
      (K * H * static_cast<double>(s.trajectory_space().size())));
  p.beta = config.beta.value_or(std::log(K * cls.size() / config.delta));
  p.lambda = config.lambda.value_or(
      g * A * A * Q * p.beta *
      std::max(std::sqrt(static_cast<double>(p.rank)), Q * std::sqrt(H) / g) /
      std::sqrt(p.d * H));
  p.alpha = config.alpha.value_or(Q * std::sqrt(p.d * H * p.lambda) / (g * g) +
                                  A * Q * std::sqrt(p.beta) / g);
  return p;
}

MleResult ConstrainedMle(const HypothesisClass& cls, const Dataset& data,
                         double p_min, double beta) {
  LikelihoodAccumulator acc(cls);
  for (std::size_t h = 0; h < data.steps.size(); ++h) {
    for (const Episode& e : data.steps[h]) {
      acc.Add(data, static_cast<int>(h), e);
    }
  }
  return acc.Select(p_min, beta);
}

std::vector<Eigen::MatrixXd> Covariances(const HypothesisClass& cls, int c,
                                         const Dataset& data, double lambda) {
  return CovariancesFromCounts(cls, c, PrefixCounts(cls.structure(), data),
                               lambda);
}

std::vector<double> BonusTable(const HypothesisClass& cls, int c,
                               const std::vector<Eigen::MatrixXd>& covariances,
                               double alpha, bool explicit_inverse) {
  const PostModel& s = cls.structure();
  const int H = s.horizon();
  std::vector<std::vector<double>> quad(H);
  for (int h = 0; h < H; ++h) {
    const Eigen::MatrixXd& f = cls.features(c, h);
    const std::vector<double>& probs = cls.prefix_probs(c, h);
    quad[h].assign(f.cols(), 0.0);
    Eigen::MatrixXd solved;
    if (explicit_inverse) {
      solved = covariances[h].inverse() * f;
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(covariances[h]);
      if (llt.info() != Eigen::Success) {
        throw std::runtime_error("covariance is not positive definite");
      }
      solved = llt.solve(f);
    }
    for (Eigen::Index i = 0; i < f.cols(); ++i) {
      if (probs[i] <= kZeroSupport) continue;
      quad[h][i] = std::max(0.0, f.col(i).dot(solved.col(i)));
    }
  }
  std::int64_t n = s.trajectory_space().size();
  std::vector<double> bonus(n);
  for (std::int64_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int h = 0; h < H; ++h) sum += quad[h][i / s.PositionCount(h, H)];
    bonus[i] = std::min(alpha * std::sqrt(sum), 1.0);
  }
  return bonus;
}

LearnResult UcbLearn(Environment& env, const HypothesisClass& cls,
                     const LearnerConfig& config,
                     const std::vector<double>& reward,
                     const PostModel* evaluation_truth) {
  const PostModel& s = cls.structure();
  const int H = s.horizon();
  if (config.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (config.iterations < 1) throw std::invalid_argument("need at least one iteration");
  LearnResult result;
  result.params = DeriveParameters(cls, config);
  const LearnerParameters& par = result.params;
  result.dataset.steps.resize(H);
  Dataset& data = result.dataset;

  std::optional<Diagnostics> diag;
  double optimal_value = 0.0;
  int truth_index = cls.truth_index();
  if (evaluation_truth != nullptr) {
    diag.emplace(cls, *evaluation_truth, config.budget);
    if (!reward.empty()) {
      optimal_value =
          PlanExhaustive(s, Product(reward, diag->truth_table()), config.budget)
              .value;
    }
  }

  SplitMixRng root(config.seed);
  LikelihoodAccumulator likelihood(cls);
  auto policy = std::make_shared<const DeterministicPolicy>(ZeroPolicy(s));
  double best_bonus = std::numeric_limits<double>::infinity();
  int theta_eps = -1;
  std::vector<int> estimates;

  for (int k = 1; k <= config.iterations; ++k) {
    for (int h = 0; h < H; ++h) {
      CollectionPolicy nu = ExplorationPolicy(s, cls.m(), h, policy);
      SplitMixRng rng = root.Split(static_cast<std::uint64_t>(k) * H + h);
      nu.seed = rng.key();
      std::vector<int> u = nu.sequences[rng.UniformInt(
          static_cast<int>(nu.sequences.size()))];
      int id = static_cast<int>(data.policies.size());
      data.policies.push_back(nu);
      const CollectionPolicy& stored = data.policies.back();
      Episode e;
      e.obs = env.CollectEpisode(
          [&](int p, const std::vector<int>& prefix, SplitMixRng& r) {
            return CollectionAction(s, stored, u, p, prefix, r);
          },
          rng);
      e.trajectory_index = s.trajectory_space().Encode(e.obs);
      e.policy_id = id;
      data.steps[h].push_back(e);
      likelihood.Add(data, h, data.steps[h].back());
      if (diag) diag->Add(data, h, data.steps[h].back());
    }

    MleResult mle = likelihood.Select(par.p_min, par.beta);
    int est = mle.estimate;
    std::vector<Eigen::MatrixXd> cov = CovariancesFromCounts(
        cls, est, PrefixCounts(s, data), par.lambda);
    std::vector<double> bonus = BonusTable(cls, est, cov, par.alpha);
    PlanResult plan =
        PlanExhaustive(s, Product(bonus, cls.do_table(est)), config.budget);
    policy = std::make_shared<const DeterministicPolicy>(plan.policy);

    IterationRecord rec;
    rec.k = k;
    rec.estimate = est;
    rec.confidence_size = static_cast<int>(mle.confidence_set.size());
    rec.bonus_value = plan.value;
    rec.relaxed = mle.relaxed;
    rec.episodes = data.num_episodes();
    if (diag) {
      rec.truth_in_theta_min =
          truth_index >= 0 &&
          std::find(mle.theta_min.begin(), mle.theta_min.end(), truth_index) !=
              mle.theta_min.end();
      rec.tv_squared_sum = diag->tv_squared(est);
      rec.hellinger_sum = diag->hellinger(est);
      if (!reward.empty()) {
        PlanResult greedy = PlanExhaustive(
            s, Product(reward, cls.do_table(est)), config.budget);
        rec.suboptimality =
            optimal_value - DeterministicValue(s, greedy.policy,
                                               Product(reward,
                                                       diag->truth_table()));
      }
    }
    result.trace.push_back(rec);
    estimates.push_back(est);
    result.iterations = k;

    if (plan.value <= config.termination_fraction * config.epsilon) {
      result.terminated = true;
      theta_eps = est;
      result.chosen_iteration = k;
      break;
    }
    // Values within rounding of the best count as ties; ties go to the
    // later iteration, which has seen more data.
    if (plan.value <= best_bonus + kBonusTieTolerance * std::max(1.0, best_bonus)) {
      best_bonus = std::min(best_bonus, plan.value);
      theta_eps = est;
      result.chosen_iteration = k;
    }
  }
  result.estimate = theta_eps;
  result.episodes = data.num_episodes();
  if (!reward.empty()) {
    PlanResult final_plan = PlanExhaustive(
        s, Product(reward, cls.do_table(theta_eps)), config.budget);
    result.policy = final_plan.policy;
    result.estimated_value = final_plan.value;
  } else {
    result.policy = ZeroPolicy(s);
  }
  return result;
}

double OperatorErrorBound(const GpsrModel& est, const GpsrModel& truth,
                          const PostModel& structure, const Policy& policy) {
  const int H = truth.horizon();
  double total = 0.0;
  Eigen::VectorXd base = FutureWeights(est, 0) * (est.psi0 - truth.psi0);
  total += base.cwiseAbs().sum();
  Eigen::MatrixXd states = truth.psi0;
  std::vector<int> obs(H, 0);
  for (int h = 1; h < H; ++h) {
    const int card = truth.cards[h - 1];
    Eigen::MatrixXd weights = FutureWeights(est, h);
    ProductSpace prefixes(std::vector<int>(truth.cards.begin(),
                                           truth.cards.begin() + h));
    std::vector<int> pv(h, 0);
    Eigen::MatrixXd next(truth.dims[h], states.cols() * card);
    for (Eigen::Index i = 0; i < states.cols(); ++i) {
      for (int x = 0; x < card; ++x) {
        Eigen::VectorXd diff = (est.ops[h][x] - truth.ops[h][x]) * states.col(i);
        next.col(i * card + x) = truth.ops[h][x] * states.col(i);
        prefixes.Decode(i * card + x, pv.data());
        std::copy(pv.begin(), pv.end(), obs.begin());
        double pi = ActionProbability(structure, policy, obs.data(), h);
        if (pi == 0.0) continue;
        total += pi * (weights * diff).cwiseAbs().sum();
      }
    }
    states = std::move(next);
  }
  return total;
}

double PolicyTotalVariation(const PostModel& structure,
                            const std::vector<double>& do_table_a,
                            const std::vector<double>& do_table_b,
                            const Policy& policy) {
  const ProductSpace& space = structure.trajectory_space();
  std::vector<int> obs(space.rank(), 0);
  double tv = 0.0;
  for (std::int64_t i = 0; i < space.size(); ++i, space.Next(obs)) {
    double diff = std::abs(do_table_a[i] - do_table_b[i]);
    if (diff == 0.0) continue;
    tv += diff * ActionProbability(structure, policy, obs.data(), space.rank());
  }
  return tv;
}

}  // namespace istruct
