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
#include <functional>
#include <vector>

#include "fixtures.h"
#include "istruct/common.h"
#include "istruct/dynamics.h"
#include "istruct/model.h"
#include "istruct/planning.h"
#include "istruct/rng.h"
#include "istruct/zoo.h"

namespace istruct {
namespace {

bool OracleConsistent(const PostModel& m, const DeterministicPolicy& det,
                      const std::vector<int>& obs) {
  for (int p = 0; p < m.horizon(); ++p) {
    if (!m.is_action_position(p)) continue;
    int t = m.observable_variable(p);
    std::int64_t row = 0;
    for (int j : m.variable(t).info_set) {
      row = row * m.variable(j).cardinality + obs[m.position(j)];
    }
    if (det.choice[t][row] != obs[p]) return false;
  }
  return true;
}

double OracleValue(const PostModel& m, const DeterministicPolicy& det,
                   const std::vector<double>& weights) {
  double v = 0.0;
  for (std::int64_t i = 0; i < m.trajectory_space().size(); ++i) {
    if (OracleConsistent(m, det, m.trajectory_space().Decode(i))) v += weights[i];
  }
  return v;
}

// Every deterministic policy, enumerated independently of PolicySpace.
void ForEachPolicy(const PostModel& m,
                   const std::function<void(const DeterministicPolicy&)>& f) {
  DeterministicPolicy det = ZeroPolicy(m);
  std::vector<std::pair<int, std::size_t>> slots;
  for (int t = 0; t < m.num_variables(); ++t) {
    if (!m.variable(t).is_action()) continue;
    for (std::size_t r = 0; r < det.choice[t].size(); ++r) slots.push_back({t, r});
  }
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == slots.size()) {
      f(det);
      return;
    }
    auto [t, r] = slots[k];
    for (int a = 0; a < m.variable(t).cardinality; ++a) {
      det.choice[t][r] = a;
      rec(k + 1);
    }
  };
  rec(0);
}

std::vector<PostModel> Models() {
  std::vector<PostModel> out;
  RandomPostOptions opts;
  opts.max_vars = 6;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    PostModel m = RandomPost(seed, opts);
    if (PolicySpace(m).size() <= 4096) out.push_back(m);
  }
  out.push_back(testing::ControlPomdp(0.85, 0.9));
  return out;
}

std::vector<double> RewardWeights(const PostModel& m, std::uint64_t seed) {
  if (m.has_reward()) return Product(DoTable(m), m.reward());
  SplitMixRng rng(seed);
  std::vector<double> r(m.trajectory_space().size());
  for (double& v : r) v = rng.Uniform();
  return Product(DoTable(m), r);
}

TEST_CASE("policy space size and decoding order") {
  PostModel m = testing::ControlPomdp(0.85, 0.9);
  PolicySpace space(m);
  // a_1 sees o_1 (2 rows), a_2 sees o_1, a_1, o_2 (8 rows).
  CHECK(space.size() == (1 << 10));
  DeterministicPolicy zero = space.Decode(0);
  for (int t : space.vars()) {
    for (int a : zero.choice[t]) CHECK(a == 0);
  }
  DeterministicPolicy one = space.Decode(1);
  int last = space.vars().back();
  CHECK(one.choice[last].back() == 1);
  DeterministicPolicy top = space.Decode(1 << 9);
  CHECK(top.choice[space.vars().front()].front() == 1);
  PolicySpace only_first(m, {space.vars().front()});
  CHECK(only_first.size() == 4);
}

TEST_CASE("deterministic values match the consistency oracle") {
  for (const PostModel& m : Models()) {
    std::vector<double> w = RewardWeights(m, 3);
    PolicySpace space(m);
    for (std::int64_t i = 0; i < space.size(); i += std::max<std::int64_t>(1, space.size() / 50)) {
      DeterministicPolicy det = space.Decode(i);
      CHECK(DeterministicValue(m, det, w) == doctest::Approx(OracleValue(m, det, w)));
      for (std::int64_t k = 0; k < m.trajectory_space().size(); ++k) {
        std::vector<int> obs = m.trajectory_space().Decode(k);
        CHECK(Consistent(m, det, obs.data()) == OracleConsistent(m, det, obs));
      }
    }
  }
}

TEST_CASE("exhaustive planning finds the best policy") {
  for (const PostModel& m : Models()) {
    std::vector<double> w = RewardWeights(m, 5);
    double best = -1.0;
    ForEachPolicy(m, [&](const DeterministicPolicy& det) {
      best = std::max(best, OracleValue(m, det, w));
    });
    PlanResult r = PlanExhaustive(m, w);
    CHECK(r.value == doctest::Approx(best).epsilon(1e-12));
    CHECK(OracleValue(m, r.policy, w) == doctest::Approx(r.value).epsilon(1e-12));
    // Ties keep the first index.
    PolicySpace space(m);
    for (std::int64_t i = 0; i < r.index; ++i) {
      CHECK(DeterministicValue(m, space.Decode(i), w) < r.value);
    }
  }
  CHECK_THROWS_AS(PlanExhaustive(testing::ControlPomdp(0.85, 0.9),
                                 DoTable(testing::ControlPomdp(0.85, 0.9)), 10),
                  BudgetExceeded);
}

TEST_CASE("planning under full history matches backward induction") {
  PostModel m = testing::ControlPomdp(0.7, 0.6);
  std::vector<double> w = Product(DoTable(m), m.reward());
  const int H = m.horizon();
  std::vector<int> prefix;
  std::function<double(int)> rec = [&](int h) {
    if (h == H) return w[m.trajectory_space().Encode(prefix)];
    double acc = m.is_action_position(h) ? -1.0 : 0.0;
    for (int x = 0; x < m.position_card(h); ++x) {
      prefix.push_back(x);
      double v = rec(h + 1);
      prefix.pop_back();
      acc = m.is_action_position(h) ? std::max(acc, v) : acc + v;
    }
    return acc;
  };
  CHECK(PlanExhaustive(m, w).value == doctest::Approx(rec(0)).epsilon(1e-12));
}

TEST_CASE("worst-policy total variation is a symmetric bounded distance") {
  PostModel a = testing::ControlPomdp(0.85, 0.9);
  PostModel b = testing::ControlPomdp(0.7, 0.6);
  std::vector<double> ta = DoTable(a), tb = DoTable(b);
  CHECK(MaxPolicyTotalVariation(a, ta, ta) == 0.0);
  double ab = MaxPolicyTotalVariation(a, ta, tb);
  CHECK(ab == MaxPolicyTotalVariation(a, tb, ta));
  CHECK(ab > 0.0);
  CHECK(ab <= 2.0);
  std::vector<double> diff(ta.size());
  for (std::size_t i = 0; i < ta.size(); ++i) diff[i] = std::abs(ta[i] - tb[i]);
  double best = 0.0;
  ForEachPolicy(a, [&](const DeterministicPolicy& det) {
    best = std::max(best, OracleValue(a, det, diff));
  });
  CHECK(ab == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("product is elementwise") {
  CHECK(Product({1, 2, 3}, {4, 5, 6}) == std::vector<double>{4, 10, 18});
}

}  // namespace
}  // namespace istruct
