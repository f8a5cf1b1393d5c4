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

#include <string>
#include <vector>

#include "fixtures.h"
#include "istruct/common.h"
#include "istruct/model.h"
#include "istruct/model_io.h"
#include "istruct/rng.h"
#include "istruct/space.h"
#include "istruct/zoo.h"

namespace istruct {
namespace {

using nlohmann::json;

json SmallDoc() {
  return json::parse(R"({
    "variables": [
      {"id": 1, "kind": "system", "cardinality": 2, "observable": false,
       "info_set": [], "name": "s"},
      {"id": 2, "kind": "system", "cardinality": 2, "observable": true,
       "info_set": [1], "name": "o"},
      {"id": 3, "kind": "action", "cardinality": 3, "observable": true,
       "info_set": [2], "name": "a"}
    ],
    "kernels": [
      {"variable": 1, "table": [[0.25, 0.75]]},
      {"variable": 2, "table": [[0.9, 0.1], [0.2, 0.8]]}
    ],
    "reward": [0, 0.5, 1, 0.25, 0.75, 1]
  })");
}

std::string ErrorOf(const json& doc) {
  try {
    ParsePost(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("product space is lexicographic with the first coordinate most "
          "significant") {
  ProductSpace space({2, 3, 4});
  CHECK(space.size() == 24);
  CHECK(space.Encode(std::vector<int>{1, 0, 0}) == 12);
  CHECK(space.Encode(std::vector<int>{0, 1, 0}) == 4);
  CHECK(space.Encode(std::vector<int>{0, 0, 3}) == 3);
  std::vector<int> walk(3, 0);
  for (std::int64_t i = 0; i < space.size(); ++i) {
    CHECK(space.Encode(walk) == i);
    CHECK(space.Decode(i) == walk);
    bool more = space.Next(walk);
    CHECK(more == (i + 1 < space.size()));
  }
  CHECK(ProductSpace(std::vector<int>{}).size() == 1);
}

TEST_CASE("saturating multiplication caps instead of overflowing") {
  CHECK(SafeMul(3, 4) == 12);
  CHECK(SafeMul(0, kSizeCap) == 0);
  CHECK(SafeMul(kSizeCap, 2) == kSizeCap);
  CHECK_THROWS_AS(CheckBudget("x", 11, 10), BudgetExceeded);
  CHECK_NOTHROW(CheckBudget("x", 10, 10));
}

TEST_CASE("rng streams are reproducible and splits leave the parent alone") {
  SplitMixRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
  SplitMixRng c(42);
  SplitMixRng child = c.Split(7);
  SplitMixRng d(42);
  CHECK(c.NextU64() == d.NextU64());
  SplitMixRng child2 = SplitMixRng(42).Split(7);
  CHECK(child.NextU64() == child2.NextU64());
  CHECK(SplitMixRng(42).Split(8).NextU64() != SplitMixRng(42).Split(7).NextU64());
  SplitMixRng u(3);
  for (int i = 0; i < 1000; ++i) {
    double x = u.Uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    int k = u.UniformInt(5);
    CHECK(k >= 0);
    CHECK(k < 5);
  }
}

TEST_CASE("categorical sampling frequencies follow the probabilities") {
  SplitMixRng rng(5);
  std::vector<double> p = {0.1, 0.6, 0.3};
  std::vector<int> counts(3, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[rng.Categorical(p)];
  for (int i = 0; i < 3; ++i) CHECK(counts[i] / double(n) == doctest::Approx(p[i]).epsilon(0.02));
  std::vector<double> zero_tail = {0.5, 0.5, 0.0};
  for (int i = 0; i < 1000; ++i) CHECK(rng.Categorical(zero_tail) != 2);
}

TEST_CASE("a well-formed document parses and exposes positions") {
  PostModel m = ParsePost(SmallDoc());
  CHECK(m.num_variables() == 3);
  CHECK(m.horizon() == 2);
  CHECK(m.observable_variable(0) == 1);
  CHECK(m.position(0) == -1);
  CHECK(m.position(2) == 1);
  CHECK(m.is_action_position(1));
  CHECK(m.trajectory_space().size() == 6);
  CHECK(m.joint_size() == 12);
  CHECK(m.ActionCount(0, 2) == 3);
  CHECK(m.PositionCount(1, 2) == 3);
  CHECK(m.KernelEntry(1, 1, 1) == doctest::Approx(0.8));
  CHECK(m.FindVariable("o") == 1);
  CHECK(m.FindVariable("missing") == -1);
  CHECK(m.info_positions(2) == std::vector<int>{0});
}

TEST_CASE("json round trip is exact and canonical") {
  PostModel m = ParsePost(SmallDoc());
  json again = ToJson(m);
  PostModel m2 = ParsePost(again);
  CHECK(CanonicalDump(ToJson(m2)) == CanonicalDump(again));
  CHECK(m2.kernels() == m.kernels());
  CHECK(m2.reward() == m.reward());

  PosgModel g = testing::GuessingGame(0.2, 0.5);
  PosgModel g2 = ParsePosg(ToJson(g));
  CHECK(IsGameDocument(ToJson(g)));
  CHECK(g2.rewards() == g.rewards());
  CHECK(g2.all_agent_actions() == g.all_agent_actions());
  CHECK(CanonicalDump(ToJson(g2)) == CanonicalDump(ToJson(g)));
}

TEST_CASE("a kernel row that does not sum to one is rejected") {
  json doc = SmallDoc();
  doc["kernels"][1]["table"][1] = {0.3, 0.8};
  std::string e = ErrorOf(doc);
  CHECK(e.find("row 1 sums to") != std::string::npos);
  CHECK(e.find("variable 2") != std::string::npos);
  CHECK(e.find("/variables/1") != std::string::npos);
}

TEST_CASE("row sums within the load tolerance are accepted") {
  json doc = SmallDoc();
  doc["kernels"][0]["table"][0] = {0.25 + 1e-13, 0.75};
  CHECK(ErrorOf(doc).empty());
  doc["kernels"][0]["table"][0] = {0.25 + 1e-10, 0.75};
  CHECK_FALSE(ErrorOf(doc).empty());
}

TEST_CASE("schema violations carry a json pointer") {
  json doc = SmallDoc();
  doc["variables"][2]["kind"] = "decision";
  CHECK(ErrorOf(doc).find("/variables/2/kind") == 0);

  doc = SmallDoc();
  doc["variables"][1]["info_set"] = {2};
  CHECK(ErrorOf(doc).find("/variables/1/info_set/0") == 0);

  doc = SmallDoc();
  doc["kernels"][1]["table"][0] = {0.5, "x"};
  CHECK(ErrorOf(doc).find("/kernels/1/table/0/1") == 0);

  doc = SmallDoc();
  doc.erase("kernels");
  CHECK(ErrorOf(doc).find("missing field \"kernels\"") != std::string::npos);

  doc = SmallDoc();
  doc["variables"][0]["cardinality"] = 0;
  CHECK(ErrorOf(doc).find("/variables/0/cardinality") == 0);
}

TEST_CASE("structural rules are enforced") {
  SUBCASE("action information must be observable") {
    json doc = SmallDoc();
    doc["variables"][2]["info_set"] = {1};
    CHECK(ErrorOf(doc).find("latent") != std::string::npos);
  }
  SUBCASE("actions carry no kernel") {
    json doc = SmallDoc();
    doc["kernels"].push_back({{"variable", 3}, {"table", {{1, 0, 0}, {1, 0, 0}}}});
    CHECK(ErrorOf(doc).find("carry no kernel") != std::string::npos);
  }
  SUBCASE("a latent action is rejected") {
    json doc = SmallDoc();
    doc["variables"][2]["observable"] = false;
    CHECK_FALSE(ErrorOf(doc).empty());
  }
  SUBCASE("the reward covers every observable trajectory") {
    json doc = SmallDoc();
    doc["reward"] = {0, 1};
    CHECK_FALSE(ErrorOf(doc).empty());
    doc["reward"] = {0, 0.5, 1, 0.25, 0.75, 1.5};
    CHECK(ErrorOf(doc).find("outside [0,1]") != std::string::npos);
  }
  SUBCASE("a kernel table with the wrong row count is rejected") {
    json doc = SmallDoc();
    doc["kernels"][1]["table"] = {{0.5, 0.5}};
    CHECK_FALSE(ErrorOf(doc).empty());
  }
  SUBCASE("no observables") {
    json doc = SmallDoc();
    doc["variables"] = json::array({doc["variables"][0]});
    doc["kernels"] = json::array({doc["kernels"][0]});
    doc.erase("reward");
    CHECK(ErrorOf(doc).find("no observable") != std::string::npos);
  }
}

TEST_CASE("game ownership rules") {
  PostModel post = testing::GuessingGame(0.2, 0.5).post();
  std::vector<double> r(16, 0.5);
  CHECK_THROWS_AS(PosgModel(post, {{1, 3}, {3}}, {r, r}), ValidationError);
  CHECK_THROWS_AS(PosgModel(post, {{1}}, {r}), ValidationError);
  CHECK_THROWS_AS(PosgModel(post, {{1}, {3}}, {r}), ValidationError);
  PosgModel ok(post, {{1}, {3}}, {r, r});
  CHECK(ok.AgentOf(1) == 0);
  CHECK(ok.AgentOf(3) == 1);
  CHECK(ok.AgentOf(0) == -1);
  CHECK(ok.TeamView(1).reward() == r);
}

TEST_CASE("policies validate and give action probabilities") {
  PostModel m = ParsePost(SmallDoc());
  Policy u = Policy::Uniform(m);
  CHECK_NOTHROW(ValidatePolicy(m, u));
  std::vector<int> obs = {1, 2};
  CHECK(ActionProbability(m, u, obs.data(), 2) == doctest::Approx(1.0 / 3));
  CHECK(ActionProbability(m, u, obs.data(), 1) == 1.0);
  DeterministicPolicy det;
  det.choice.resize(3);
  det.choice[2] = {2, 0};
  Policy p = Policy::FromDeterministic(m, det);
  CHECK(ActionProbability(m, p, obs.data(), 2) == 0.0);
  obs = {0, 2};
  CHECK(ActionProbability(m, p, obs.data(), 2) == 1.0);
  Policy bad = u;
  bad.tables[2][0] = 0.9;
  CHECK_THROWS_AS(ValidatePolicy(m, bad), ValidationError);
  CHECK(ObservablePart(m, {1, 0, 2}) == std::vector<int>{0, 2});
}

}  // namespace
}  // namespace istruct
