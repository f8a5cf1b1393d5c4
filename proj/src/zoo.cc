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

#include "istruct/zoo.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "istruct/common.h"

namespace istruct {
namespace {

// Largest observable trajectory space that still gets a random reward.
constexpr std::int64_t kMaxRewardSize = std::int64_t{1} << 20;

class Builder {
 public:
  Builder(std::uint64_t seed, double noise) : rng_(seed), noise_(noise) {}

  int Add(VarKind kind, int card, bool observable, std::vector<int> info,
          std::string name) {
    std::sort(info.begin(), info.end());
    info.erase(std::unique(info.begin(), info.end()), info.end());
    VariableSpec v;
    v.kind = kind;
    v.cardinality = card;
    v.observable = kind == VarKind::kAction || observable;
    v.info_set = std::move(info);
    v.name = std::move(name);
    vars_.push_back(v);
    kernels_.emplace_back();
    int t = static_cast<int>(vars_.size()) - 1;
    if (kind == VarKind::kSystem) {
      std::int64_t rows = Rows(t);
      for (std::int64_t r = 0; r < rows; ++r) {
        std::vector<double> row = RandomDistribution(rng_, card);
        if (noise_ < 1.0) {
          for (double& v : row) v *= noise_;
          row[DigitSum(t, r) % card] += 1.0 - noise_;
        }
        kernels_[t].insert(kernels_[t].end(), row.begin(), row.end());
      }
    }
    return t;
  }
  int Observation(int card, std::vector<int> info, std::string name) {
    return Add(VarKind::kSystem, card, true, std::move(info), std::move(name));
  }
  int Latent(int card, std::vector<int> info, std::string name) {
    return Add(VarKind::kSystem, card, false, std::move(info), std::move(name));
  }
  int Action(int card, std::vector<int> info, std::string name) {
    return Add(VarKind::kAction, card, true, std::move(info), std::move(name));
  }

  std::int64_t Rows(int t) const {
    std::int64_t rows = 1;
    for (int j : vars_[t].info_set) rows = SafeMul(rows, vars_[j].cardinality);
    return rows;
  }
  // Sum of the info-set values encoded by row r.
  std::int64_t DigitSum(int t, std::int64_t r) const {
    std::int64_t sum = 0;
    const std::vector<int>& info = vars_[t].info_set;
    for (auto it = info.rbegin(); it != info.rend(); ++it) {
      int c = vars_[*it].cardinality;
      sum += r % c;
      r /= c;
    }
    return sum;
  }
  const VariableSpec& var(int t) const { return vars_[t]; }
  void SetKernel(int t, std::vector<double> kernel) {
    kernels_[t] = std::move(kernel);
  }
  SplitMixRng& rng() { return rng_; }

  PostModel Build() {
    PostModel model(vars_, kernels_);
    if (model.trajectory_space().size() <= kMaxRewardSize) {
      std::vector<double> reward(model.trajectory_space().size());
      for (double& r : reward) r = rng_.Uniform();
      model.set_reward(std::move(reward));
    }
    return model;
  }

 private:
  SplitMixRng rng_;
  double noise_;
  std::vector<VariableSpec> vars_;
  std::vector<std::vector<double>> kernels_;
};

std::string Sub(const std::string& base, int t) {
  return base + "_" + std::to_string(t);
}
std::string SubSup(const std::string& base, int t, int i) {
  return base + "_" + std::to_string(t) + "^" + std::to_string(i);
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("invalid zoo parameters: " + what);
}

std::vector<int> Sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

PosgModel TeamGame(const PostModel& model,
                   const std::vector<std::vector<int>>& agent_actions) {
  std::vector<std::vector<double>> rewards(agent_actions.size(),
                                           model.reward());
  return PosgModel(model, agent_actions, rewards);
}

ZooEntry MakePomdpExample(const ZooParams& p) {
  Require(p.states >= 1 && p.observations >= 1 && p.actions >= 1 &&
              p.horizon >= 1,
          "pomdp sizes must be positive");
  Require(p.noise >= 0.0 && p.noise <= 1.0, "noise must lie in [0, 1]");
  Builder b(p.seed, p.noise);
  std::vector<int> s(p.horizon), o(p.horizon), a(p.horizon);
  std::vector<int> history;
  for (int t = 0; t < p.horizon; ++t) {
    s[t] = t == 0 ? b.Latent(p.states, {}, Sub("s", 1))
                  : b.Latent(p.states, {s[t - 1], a[t - 1]}, Sub("s", t + 1));
    o[t] = b.Observation(p.observations, {s[t]}, Sub("o", t + 1));
    history.push_back(o[t]);
    a[t] = b.Action(p.actions, history, Sub("a", t + 1));
    history.push_back(a[t]);
  }
  ZooEntry e;
  e.kind = "pomdp";
  e.model = b.Build();
  for (int t = 0; t < p.horizon; ++t) {
    // Positions: o_t at 2t, a_t at 2t + 1.
    if (t > 0) e.expected_separators.push_back({2 * t, {s[t]}, Sub("o", t + 1)});
    if (t + 1 < p.horizon) {
      // Before the first action the lone observation is cheaper when
      // |O| < |S|.
      std::vector<int> sep = {s[t]};
      if (t == 0 && p.observations < p.states) sep = {o[0]};
      e.expected_separators.push_back({2 * t + 1, sep, Sub("a", t + 1)});
    }
  }
  e.expected_rank_bound = p.horizon >= 2 ? p.states : 1;
  return e;
}

ZooEntry MakeDecPomdpExample(const ZooParams& p) {
  Require(p.agents >= 1 && p.states >= 1 && p.observations >= 1 &&
              p.actions >= 1 && p.horizon >= 1,
          "dec_pomdp sizes must be positive");
  const int n = p.agents;
  Builder b(p.seed, p.noise);
  std::vector<int> s(p.horizon);
  std::vector<std::vector<int>> o(p.horizon, std::vector<int>(n));
  std::vector<std::vector<int>> a(p.horizon, std::vector<int>(n));
  std::vector<std::vector<int>> own(n);
  std::vector<std::vector<int>> agent_actions(n);
  for (int t = 0; t < p.horizon; ++t) {
    std::vector<int> info;
    if (t > 0) {
      info.push_back(s[t - 1]);
      info.insert(info.end(), a[t - 1].begin(), a[t - 1].end());
    }
    s[t] = b.Latent(p.states, info, Sub("s", t + 1));
    for (int i = 0; i < n; ++i) {
      o[t][i] = b.Observation(p.observations, {s[t]}, SubSup("o", t + 1, i + 1));
      own[i].push_back(o[t][i]);
    }
    for (int i = 0; i < n; ++i) {
      a[t][i] = b.Action(p.actions, own[i], SubSup("a", t + 1, i + 1));
      agent_actions[i].push_back(a[t][i]);
    }
    for (int i = 0; i < n; ++i) own[i].push_back(a[t][i]);
  }
  ZooEntry e;
  e.kind = "dec_pomdp";
  e.model = b.Build();
  const int round = 2 * n;
  // In the first round the observations seen so far replace s_1 when their
  // joint size is smaller.
  auto first_round = [&](int k) {
    std::int64_t size = 1;
    for (int i = 0; i < k; ++i) size = SafeMul(size, p.observations);
    if (size >= p.states) return std::vector<int>{s[0]};
    return std::vector<int>(o[0].begin(), o[0].begin() + k);
  };
  for (int t = 0; t < p.horizon; ++t) {
    for (int i = 0; i < n; ++i) {
      int h = t * round + i;
      if (h > 0) {
        std::vector<int> sep = t == 0 ? first_round(i) : std::vector<int>{s[t]};
        e.expected_separators.push_back({h, sep, SubSup("o", t + 1, i + 1)});
      }
    }
    if (t + 1 < p.horizon) {
      std::vector<int> sep = t == 0 ? first_round(n) : std::vector<int>{s[t]};
      e.expected_separators.push_back({t * round + n, sep, SubSup("a", t + 1, 1)});
    }
  }
  e.expected_rank_bound = p.states;
  if (e.model.has_reward()) e.game = TeamGame(e.model, agent_actions);
  return e;
}

ZooEntry MakeLimitedMemoryExample(const ZooParams& p) {
  Require(p.observations >= 1 && p.actions >= 1 && p.horizon >= 1 &&
              p.memory >= 1,
          "limited_memory sizes must be positive");
  Builder b(p.seed, p.noise);
  std::vector<int> o(p.horizon), a(p.horizon);
  std::vector<int> history;
  for (int t = 0; t < p.horizon; ++t) {
    std::vector<int> info;
    for (int j = std::max(0, t - p.memory); j < t; ++j) {
      info.push_back(o[j]);
      info.push_back(a[j]);
    }
    o[t] = b.Observation(p.observations, info, Sub("o", t + 1));
    history.push_back(o[t]);
    a[t] = b.Action(p.actions, history, Sub("a", t + 1));
    history.push_back(a[t]);
  }
  ZooEntry e;
  e.kind = "limited_memory";
  e.model = b.Build();
  for (int t = 1; t < p.horizon; ++t) {
    std::vector<int> expected;
    for (int j = std::max(0, t - p.memory); j < t; ++j) {
      expected.push_back(o[j]);
      expected.push_back(a[j]);
    }
    e.expected_separators.push_back({2 * t, Sorted(expected), Sub("o", t + 1)});
  }
  e.expected_rank_bound =
      std::pow(static_cast<double>(p.observations) * p.actions, p.memory);
  return e;
}

ZooEntry MakeMeanFieldExample(const ZooParams& p) {
  Require(p.agents >= 1 && p.states >= 2 && p.actions >= 2 && p.horizon >= 1,
          "mean_field needs agents >= 1 and local cardinalities >= 2");
  const int n = p.agents;
  Builder b(p.seed, p.noise);
  const int ds_card = static_cast<int>(CompositionCount(n, p.states));
  const int da_card = static_cast<int>(CompositionCount(n, p.actions));
  std::vector<int> dist_s(p.horizon), dist_a(p.horizon);
  std::vector<std::vector<int>> agent_actions(n);
  std::vector<int> round_start(p.horizon);
  std::vector<int> first_s(p.horizon), first_a(p.horizon);

  // Deterministic aggregation: the row of an assignment of the n locals maps
  // to the index of its count vector.
  auto aggregate = [&](int t, int local_card) {
    std::int64_t rows = b.Rows(t);
    int card = b.var(t).cardinality;
    std::vector<double> kernel(rows * card, 0.0);
    ProductSpace space(std::vector<int>(n, local_card));
    std::vector<int> values(n, 0);
    for (std::int64_t r = 0; r < rows; ++r) {
      space.Decode(r, values.data());
      std::vector<int> counts(local_card, 0);
      for (int v : values) ++counts[v];
      kernel[r * card + CompositionIndex(counts)] = 1.0;
    }
    b.SetKernel(t, std::move(kernel));
  };

  int position = 0;
  for (int t = 0; t < p.horizon; ++t) {
    round_start[t] = position;
    std::vector<int> s(n), a(n);
    std::vector<int> info;
    if (t > 0) info = {dist_s[t - 1], dist_a[t - 1]};
    for (int i = 0; i < n; ++i) {
      s[i] = b.Observation(p.states, info, SubSup("s", t + 1, i + 1));
      ++position;
    }
    dist_s[t] = b.Latent(ds_card, s, Sub("dist_s", t + 1));
    aggregate(dist_s[t], p.states);
    for (int i = 0; i < n; ++i) {
      a[i] = b.Action(p.actions, {s[i]}, SubSup("a", t + 1, i + 1));
      agent_actions[i].push_back(a[i]);
      ++position;
    }
    dist_a[t] = b.Latent(da_card, a, Sub("dist_a", t + 1));
    aggregate(dist_a[t], p.actions);
    first_s[t] = s[0];
    first_a[t] = a[0];
  }
  ZooEntry e;
  e.kind = "mean_field";
  e.model = b.Build();
  for (int t = 1; t < p.horizon; ++t) {
    // A single agent's aggregates copy its own values, and the earlier ids
    // win the tie.
    std::vector<int> sep = n == 1
                               ? std::vector<int>{first_s[t - 1], first_a[t - 1]}
                               : Sorted({dist_s[t - 1], dist_a[t - 1]});
    e.expected_separators.push_back({round_start[t], sep, SubSup("s", t + 1, 1)});
  }
  e.expected_rank_bound = MeanFieldStateCount(n, p.states).bound;
  if (p.states != p.actions) {
    double k_s = p.states, k_a = p.actions;
    e.expected_rank_bound = k_s * k_a *
                            std::pow(n / (k_s - 1) + 1, k_s - 1) *
                            std::pow(n / (k_a - 1) + 1, k_a - 1);
  }
  if (e.model.has_reward()) e.game = TeamGame(e.model, agent_actions);
  return e;
}

ZooEntry MakeCommFeedbackExample(const ZooParams& p) {
  Require(p.states >= 1 && p.actions >= 1 && p.observations >= 1 &&
              p.horizon >= 1,
          "comm_feedback sizes must be positive");
  Builder b(p.seed, p.noise);
  std::vector<int> x(p.horizon), z(p.horizon), y(p.horizon), xh(p.horizon);
  std::vector<int> encoder, decoder;
  for (int t = 0; t < p.horizon; ++t) {
    x[t] = t == 0 ? b.Observation(p.states, {}, Sub("x", 1))
                  : b.Observation(p.states, {x[t - 1]}, Sub("x", t + 1));
    encoder.push_back(x[t]);
    z[t] = b.Action(p.actions, encoder, Sub("z", t + 1));
    encoder.push_back(z[t]);
    y[t] = b.Observation(p.observations, {z[t]}, Sub("y", t + 1));
    decoder.push_back(y[t]);
    xh[t] = b.Action(p.states, decoder, Sub("xhat", t + 1));
    // The encoder sees the channel output from the next round on.
    encoder.push_back(y[t]);
  }
  ZooEntry e;
  e.kind = "comm_feedback";
  e.model = b.Build();
  for (int t = 0; t + 1 < p.horizon; ++t) {
    // Positions: x_t 4t, z_t 4t+1, y_t 4t+2, xhat_t 4t+3.
    e.expected_separators.push_back({4 * t + 1, {x[t]}, Sub("x", t + 1)});
    e.expected_separators.push_back({4 * t + 1, {x[t]}, Sub("z", t + 1)});
    e.expected_separators.push_back(
        {4 * t + 2, Sorted({x[t], z[t]}), Sub("y", t + 1)});
    e.expected_separators.push_back({4 * t + 3, {x[t]}, Sub("xhat", t + 1)});
  }
  e.expected_rank_bound = static_cast<double>(p.states) * p.actions;
  return e;
}

ZooEntry MakeFullyConnectedExample(const ZooParams& p) {
  Require(p.observations >= 1 && p.actions >= 1 && p.horizon >= 1,
          "fully_connected sizes must be positive");
  Builder b(p.seed, p.noise);
  std::vector<int> history;
  for (int t = 0; t < p.horizon; ++t) {
    int o = b.Observation(p.observations, history, Sub("o", t + 1));
    history.push_back(o);
    int a = b.Action(p.actions, history, Sub("a", t + 1));
    history.push_back(a);
  }
  ZooEntry e;
  e.kind = "fully_connected";
  e.model = b.Build();
  for (int t = 1; t < p.horizon; ++t) {
    std::vector<int> expected(history.begin(), history.begin() + 2 * t);
    e.expected_separators.push_back({2 * t, expected, Sub("o", t + 1)});
  }
  e.expected_rank_bound = std::pow(static_cast<double>(p.observations) * p.actions,
                                   p.horizon - 1);
  return e;
}

}  // namespace

std::vector<double> RandomDistribution(SplitMixRng& rng, int n) {
  std::vector<double> row(n);
  double total = 0.0;
  for (double& v : row) {
    // Exponential draws give a flat Dirichlet; the offset keeps every entry
    // bounded away from zero.
    v = 0.05 - std::log1p(-rng.Uniform());
    total += v;
  }
  for (double& v : row) v /= total;
  return row;
}

const std::vector<std::string>& ZooKinds() {
  static const std::vector<std::string> kinds = {
      "pomdp",        "dec_pomdp",     "limited_memory",
      "mean_field",   "comm_feedback", "fully_connected"};
  return kinds;
}

ZooEntry MakeExample(const std::string& kind, const ZooParams& params) {
  if (kind == "pomdp") return MakePomdpExample(params);
  if (kind == "dec_pomdp") return MakeDecPomdpExample(params);
  if (kind == "limited_memory") return MakeLimitedMemoryExample(params);
  if (kind == "mean_field") return MakeMeanFieldExample(params);
  if (kind == "comm_feedback") return MakeCommFeedbackExample(params);
  if (kind == "fully_connected") return MakeFullyConnectedExample(params);
  throw ValidationError("unknown zoo kind '" + kind + "'");
}

std::int64_t CompositionCount(int n, int k) {
  // C(n + k - 1, k - 1), exact at every step.
  std::int64_t c = 1;
  for (int j = 1; j < k; ++j) c = c * (n + j) / j;
  return c;
}

std::int64_t CompositionIndex(const std::vector<int>& counts) {
  const int k = static_cast<int>(counts.size());
  int remaining = std::accumulate(counts.begin(), counts.end(), 0);
  std::int64_t index = 0;
  for (int j = 0; j + 1 < k; ++j) {
    // Count vectors sharing the prefix whose j-th entry is smaller.
    for (int v = 0; v < counts[j]; ++v) {
      index += CompositionCount(remaining - v, k - j - 1);
    }
    remaining -= counts[j];
  }
  return index;
}

MeanFieldCount MeanFieldStateCount(int agents, int card) {
  MeanFieldCount out;
  std::int64_t c = CompositionCount(agents, card);
  out.exact = c * c;
  double k = card;
  out.bound = k * k * std::pow(agents / (k - 1) + 1, 2 * (k - 1));
  return out;
}

PostModel RandomPost(std::uint64_t seed, const RandomPostOptions& options) {
  Builder b(seed, 1.0);
  SplitMixRng shape = b.rng().Split(1);
  int n = options.max_vars <= 1 ? 1 : 2 + shape.UniformInt(options.max_vars - 1);
  int max_card = std::max(1, options.max_card);
  std::vector<int> observable;
  std::vector<int> all;
  for (int t = 0; t < n; ++t) {
    int card = max_card == 1 ? 1 : 2 + shape.UniformInt(max_card - 1);
    bool action = shape.Uniform() < options.action_fraction;
    bool latent = !action && shape.Uniform() < options.latent_fraction;
    if (t == n - 1 && observable.empty()) latent = false;
    const std::vector<int>& pool = action ? observable : all;
    std::vector<int> info;
    for (int j : pool) {
      if (static_cast<int>(info.size()) >= options.max_info) break;
      if (shape.Uniform() < options.edge_probability) info.push_back(j);
    }
    std::string name = "x" + std::to_string(t + 1);
    int id = action ? b.Action(card, info, name)
                    : b.Add(VarKind::kSystem, card, !latent, info, name);
    all.push_back(id);
    if (action || !latent) observable.push_back(id);
  }
  PostModel model = b.Build();
  if (!options.with_reward) model.set_reward({});
  return model;
}

PostModel MakePomdp(const PomdpSpec& spec, std::vector<double> reward) {
  const int ns = static_cast<int>(spec.initial.size());
  const int no = spec.emission.empty()
                     ? 1
                     : static_cast<int>(spec.emission[0].size());
  Require(ns >= 1 && spec.rounds >= 1 && spec.actions >= 1 &&
              static_cast<int>(spec.emission.size()) == ns &&
              static_cast<int>(spec.transition.size()) == ns * spec.actions,
          "pomdp spec dimensions");
  std::vector<VariableSpec> vars;
  std::vector<std::vector<double>> kernels;
  std::vector<double> trans, emit;
  for (const auto& row : spec.transition) trans.insert(trans.end(), row.begin(), row.end());
  for (const auto& row : spec.emission) emit.insert(emit.end(), row.begin(), row.end());
  std::vector<int> history;
  int prev_s = -1, prev_a = -1;
  for (int t = 0; t < spec.rounds; ++t) {
    VariableSpec s;
    s.cardinality = ns;
    s.name = Sub("s", t + 1);
    if (t > 0) s.info_set = {prev_s, prev_a};
    vars.push_back(s);
    kernels.push_back(t == 0 ? spec.initial : trans);
    prev_s = static_cast<int>(vars.size()) - 1;

    VariableSpec o;
    o.cardinality = no;
    o.observable = true;
    o.info_set = {prev_s};
    o.name = Sub("o", t + 1);
    vars.push_back(o);
    kernels.push_back(emit);
    history.push_back(static_cast<int>(vars.size()) - 1);

    VariableSpec a;
    a.kind = VarKind::kAction;
    a.cardinality = spec.actions;
    a.observable = true;
    a.info_set = history;
    a.name = Sub("a", t + 1);
    vars.push_back(a);
    kernels.emplace_back();
    prev_a = static_cast<int>(vars.size()) - 1;
    history.push_back(prev_a);
  }
  return PostModel(vars, kernels, std::move(reward));
}

}  // namespace istruct
