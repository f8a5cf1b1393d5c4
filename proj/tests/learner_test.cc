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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "fixtures.h"
#include "istruct/common.h"
#include "istruct/dynamics.h"
#include "istruct/gpsr.h"
#include "istruct/learner.h"
#include "istruct/model.h"
#include "istruct/planning.h"
#include "istruct/rng.h"

namespace istruct {
namespace {

constexpr int kM = 2;
constexpr double kAlphaReveal = 0.1;

PostModel Truth() { return testing::ControlPomdp(0.85, 0.9); }

HypothesisClass MakeClass() {
  return HypothesisClass({testing::ControlPomdp(0.7, 0.9), Truth(),
                          testing::ControlPomdp(0.85, 0.6)},
                         kM, kAlphaReveal);
}

std::shared_ptr<const DeterministicPolicy> RandomBase(const PostModel& m,
                                                      std::uint64_t seed) {
  SplitMixRng rng(seed);
  auto det = std::make_shared<DeterministicPolicy>(ZeroPolicy(m));
  for (int t = 0; t < m.num_variables(); ++t) {
    if (!m.variable(t).is_action()) continue;
    for (int& a : det->choice[t]) a = rng.UniformInt(m.variable(t).cardinality);
  }
  return det;
}

// Draws one episode of the collection policy from the environment.
Episode Draw(Environment& env, const PostModel& s, const CollectionPolicy& pol,
             int policy_id, SplitMixRng& rng) {
  const std::vector<int>& seq =
      pol.sequences[rng.UniformInt(static_cast<int>(pol.sequences.size()))];
  EpisodeChooser chooser = [&](int p, const std::vector<int>& prefix,
                               SplitMixRng& r) {
    return CollectionAction(s, pol, seq, p, prefix, r);
  };
  Episode e;
  e.obs = env.CollectEpisode(chooser, rng);
  e.trajectory_index = s.trajectory_space().Encode(e.obs);
  e.policy_id = policy_id;
  return e;
}

Dataset SampleDataset(const PostModel& truth, int per_step, std::uint64_t seed) {
  Environment env(truth);
  SplitMixRng rng(seed);
  Dataset data;
  const int H = truth.horizon();
  data.steps.resize(H);
  for (int h = 0; h < H; ++h) {
    data.policies.push_back(ExplorationPolicy(truth, kM, h, RandomBase(truth, seed + h)));
    for (int i = 0; i < per_step; ++i) {
      data.steps[h].push_back(Draw(env, truth, data.policies.back(), h, rng));
    }
  }
  return data;
}

TEST_CASE("hypothesis class tabulates each candidate") {
  HypothesisClass cls = MakeClass();
  CHECK(cls.size() == 3);
  CHECK(cls.truth_index() == -1);
  cls.MarkTruth(Truth());
  CHECK(cls.truth_index() == 1);
  CHECK(cls.contains_truth(1));
  CHECK_FALSE(cls.contains_truth(0));
  for (int c = 0; c < cls.size(); ++c) {
    std::vector<double> table = DoTable(cls.model(c));
    for (std::size_t i = 0; i < table.size(); ++i) {
      CHECK(std::abs(cls.do_table(c)[i] - table[i]) < 1e-10);
    }
    for (int h = 0; h <= cls.structure().horizon(); ++h) {
      std::vector<double> prefix = PrefixTable(table, cls.structure(), h);
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        CHECK(std::abs(cls.prefix_probs(c, h)[i] - prefix[i]) < 1e-10);
      }
    }
    CHECK(cls.gamma(c) > 0.0);
  }
  // Other structures and non-revealing candidates are rejected.
  CHECK_THROWS_AS(HypothesisClass({Truth(), testing::IdentityPomdp(3, 2, 2, 0.0, 1)},
                                  kM, kAlphaReveal),
                  ValidationError);
  CHECK_THROWS_AS(HypothesisClass({testing::ControlPomdp(0.5, 0.9)}, kM, kAlphaReveal),
                  ConstructionRefused);
}

TEST_CASE("collection probabilities are consistent distributions") {
  PostModel s = Truth();
  const int H = s.horizon();
  std::vector<double> table = DoTable(s);
  for (int start = 0; start < H; ++start) {
    CollectionPolicy pol = ExplorationPolicy(s, kM, start, RandomBase(s, 40 + start));
    CHECK_FALSE(pol.sequences.empty());
    double total = 0.0;
    for (std::int64_t i = 0; i < s.trajectory_space().size(); ++i) {
      std::vector<int> obs = s.trajectory_space().Decode(i);
      total += table[i] * CollectionProbability(s, pol, obs.data(), H);
      // Marginalizing the action at position len recovers the shorter prefix.
      for (int len = 0; len < H; ++len) {
        double here = CollectionProbability(s, pol, obs.data(), len);
        if (!s.is_action_position(len)) {
          CHECK(CollectionProbability(s, pol, obs.data(), len + 1) ==
                doctest::Approx(here));
          continue;
        }
        std::vector<int> alt = obs;
        double sum = 0.0;
        for (int a = 0; a < s.position_card(len); ++a) {
          alt[len] = a;
          sum += CollectionProbability(s, pol, alt.data(), len + 1);
        }
        CHECK(sum == doctest::Approx(here));
      }
    }
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("sampled episodes follow the collection distribution") {
  PostModel s = Truth();
  std::vector<double> table = DoTable(s);
  CollectionPolicy pol = ExplorationPolicy(s, kM, 1, RandomBase(s, 3));
  Environment env(s);
  SplitMixRng rng(12);
  const int n = 100000;
  std::vector<double> freq(table.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    freq[Draw(env, s, pol, 0, rng).trajectory_index] += 1.0 / n;
  }
  CHECK(env.episodes() == n);
  for (std::int64_t i = 0; i < s.trajectory_space().size(); ++i) {
    std::vector<int> obs = s.trajectory_space().Decode(i);
    double p = table[i] * CollectionProbability(s, pol, obs.data(), s.horizon());
    CHECK(std::abs(freq[i] - p) < 0.01);
  }
}

TEST_CASE("constrained likelihood matches a direct computation") {
  HypothesisClass cls = MakeClass();
  const PostModel& s = cls.structure();
  const int H = s.horizon();
  Dataset data = SampleDataset(Truth(), 400, 77);
  CHECK(data.num_episodes() == 400 * H);
  const double p_min = 1e-3, beta = 2.0;
  MleResult r = ConstrainedMle(cls, data, p_min, beta);
  std::vector<double> ll(cls.size(), 0.0), floor(cls.size(), 1.0);
  for (int h = 0; h < H; ++h) {
    for (const Episode& e : data.steps[h]) {
      const CollectionPolicy& pol = data.policies[e.policy_id];
      for (int c = 0; c < cls.size(); ++c) {
        std::vector<int> prefix(e.obs.begin(), e.obs.begin() + h);
        ll[c] += std::log(DoTable(cls.model(c))[e.trajectory_index] *
                          CollectionProbability(s, pol, e.obs.data(), H));
        floor[c] = std::min(floor[c], DoProbability(cls.model(c), prefix) *
                                          CollectionProbability(s, pol, e.obs.data(), h));
      }
    }
  }
  int best = -1;
  for (int c = 0; c < cls.size(); ++c) {
    CHECK(r.log_likelihood[c] == doctest::Approx(ll[c]).epsilon(1e-9));
    bool in_min = std::find(r.theta_min.begin(), r.theta_min.end(), c) != r.theta_min.end();
    CHECK(in_min == (floor[c] >= p_min));
    if (in_min && (best < 0 || ll[c] > ll[best])) best = c;
  }
  CHECK_FALSE(r.relaxed);
  CHECK(r.estimate == best);
  CHECK(r.estimate == 1);
  for (int c : r.confidence_set) CHECK(ll[c] >= ll[best] - beta - 1e-9);
  // An unreachable floor falls back to every candidate with support.
  MleResult relaxed = ConstrainedMle(cls, data, 2.0, beta);
  CHECK(relaxed.relaxed);
  CHECK(relaxed.estimate == 1);
}

TEST_CASE("covariances and bonuses match direct formulas") {
  HypothesisClass cls = MakeClass();
  const PostModel& s = cls.structure();
  const int H = s.horizon();
  Dataset data = SampleDataset(Truth(), 50, 5);
  const double lambda = 0.3, alpha = 0.4;
  for (int c = 0; c < cls.size(); ++c) {
    std::vector<Eigen::MatrixXd> cov = Covariances(cls, c, data, lambda);
    REQUIRE(static_cast<int>(cov.size()) == H);
    for (int h = 0; h < H; ++h) {
      const int d = cls.psr(c).dims[h];
      Eigen::MatrixXd u = lambda * Eigen::MatrixXd::Identity(d, d);
      for (const Episode& e : data.steps[h]) {
        PredictionFeature f = ComputePredictionFeature(cls.psr(c), e.obs.data(), h);
        if (f.psi_bar) u += *f.psi_bar * f.psi_bar->transpose();
      }
      CHECK((cov[h] - u).cwiseAbs().maxCoeff() < 1e-9);
    }
    std::vector<double> chol = BonusTable(cls, c, cov, alpha);
    std::vector<double> inv = BonusTable(cls, c, cov, alpha, true);
    for (std::int64_t i = 0; i < s.trajectory_space().size(); ++i) {
      std::vector<int> obs = s.trajectory_space().Decode(i);
      double q = 0.0;
      for (int h = 0; h < H; ++h) {
        PredictionFeature f = ComputePredictionFeature(cls.psr(c), obs.data(), h);
        if (f.psi_bar) q += f.psi_bar->dot(cov[h].inverse() * *f.psi_bar);
      }
      double expected = std::min(alpha * std::sqrt(q), 1.0);
      CHECK(chol[i] == doctest::Approx(expected).epsilon(1e-9));
      CHECK(inv[i] == doctest::Approx(chol[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("derived parameters follow their defaults and overrides") {
  HypothesisClass cls = MakeClass();
  LearnerConfig config;
  config.iterations = 20;
  config.delta = 0.2;
  config.m = kM;
  LearnerParameters p = DeriveParameters(cls, config);
  const double traj = static_cast<double>(cls.structure().trajectory_space().size());
  CHECK(p.p_min == doctest::Approx(0.2 / (20 * 4 * traj)));
  CHECK(p.beta == doctest::Approx(std::log(20 * 3 / 0.2)));
  CHECK(p.horizon == 4);
  CHECK(p.max_action_card == 2);
  CHECK(p.d == 4);
  CHECK(p.q_a == 2);
  double gamma = std::min({cls.gamma(0), cls.gamma(1), cls.gamma(2)});
  CHECK(p.gamma == gamma);
  CHECK(p.lambda > 0.0);
  CHECK(p.alpha > 0.0);
  config.alpha = 0.5;
  config.lambda = 2.0;
  config.beta = 3.0;
  config.p_min = 1e-4;
  LearnerParameters q = DeriveParameters(cls, config);
  CHECK(q.alpha == 0.5);
  CHECK(q.lambda == 2.0);
  CHECK(q.beta == 3.0);
  CHECK(q.p_min == 1e-4);
}

TEST_CASE("learning is deterministic and terminates with a small bonus scale") {
  HypothesisClass cls = MakeClass();
  PostModel truth = Truth();
  LearnerConfig config;
  config.iterations = 8;
  config.m = kM;
  config.seed = 9;
  Environment env_a(truth), env_b(truth);
  LearnResult a = UcbLearn(env_a, cls, config, truth.reward(), &truth);
  LearnResult b = UcbLearn(env_b, cls, config, truth.reward(), &truth);
  CHECK(a.estimate == b.estimate);
  CHECK(a.chosen_iteration == b.chosen_iteration);
  CHECK(a.episodes == b.episodes);
  CHECK(a.estimated_value == b.estimated_value);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].bonus_value == b.trace[i].bonus_value);
    CHECK(a.trace[i].estimate == b.trace[i].estimate);
    CHECK(a.trace[i].episodes == b.trace[i].episodes);
  }
  CHECK(env_a.episodes() == a.episodes);
  CHECK(a.dataset.num_episodes() == a.episodes);
  CHECK(static_cast<int>(a.trace.size()) == a.iterations);
  // Each iteration draws one episode per step.
  CHECK(a.episodes == static_cast<std::int64_t>(a.iterations) * truth.horizon());

  config.alpha = 1e-9;
  Environment env_c(truth);
  LearnResult c = UcbLearn(env_c, cls, config, truth.reward(), &truth);
  CHECK(c.terminated);
  CHECK(c.iterations < config.iterations);
  CHECK(c.chosen_iteration == c.trace.back().k);

  config.seed = 10;
  config.alpha.reset();
  Environment env_d(truth);
  LearnResult d = UcbLearn(env_d, cls, config, truth.reward(), &truth);
  bool differs = d.trace.size() != a.trace.size();
  for (std::size_t i = 0; !differs && i < a.trace.size(); ++i) {
    differs = a.trace[i].bonus_value != d.trace[i].bonus_value;
  }
  CHECK(differs);
}

TEST_CASE("operator error bound dominates the policy total variation") {
  HypothesisClass cls = MakeClass();
  const PostModel& s = cls.structure();
  SplitMixRng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    Policy pol = Policy::Uniform(s);
    for (int t = 0; t < s.num_variables(); ++t) {
      if (!s.variable(t).is_action()) continue;
      for (std::size_t r = 0; 2 * r < pol.tables[t].size(); ++r) {
        double x = rng.Uniform();
        pol.tables[t][2 * r] = x;
        pol.tables[t][2 * r + 1] = 1.0 - x;
      }
    }
    for (int a = 0; a < cls.size(); ++a) {
      for (int b = 0; b < cls.size(); ++b) {
        double tv = PolicyTotalVariation(s, cls.do_table(a), cls.do_table(b), pol);
        double direct = 0.0;
        for (std::int64_t i = 0; i < s.trajectory_space().size(); ++i) {
          std::vector<int> obs = s.trajectory_space().Decode(i);
          direct += std::abs(cls.do_table(a)[i] - cls.do_table(b)[i]) *
                    ActionProbability(s, pol, obs.data(), s.horizon());
        }
        CHECK(tv == doctest::Approx(direct).epsilon(1e-12));
        double bound = OperatorErrorBound(cls.psr(a), cls.psr(b), s, pol);
        CHECK(bound >= tv - 1e-9);
        if (a == b) CHECK(bound < 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace istruct
