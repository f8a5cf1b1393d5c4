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

#include "istruct/info_graph.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "istruct/dynamics.h"

namespace istruct {
namespace {

constexpr std::int64_t kInfinity = std::int64_t{1} << 60;

// Dinic maximum flow on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : graph_(n), level_(n), next_(n) {}

  void AddArc(int from, int to, std::int64_t capacity) {
    graph_[from].push_back({to, static_cast<int>(graph_[to].size()), capacity});
    graph_[to].push_back({from, static_cast<int>(graph_[from].size()) - 1, 0});
  }

  std::int64_t Run(int source, int sink) {
    std::int64_t flow = 0;
    while (Levels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (std::int64_t pushed = Push(source, sink, kInfinity)) {
        flow += pushed;
        if (flow >= kInfinity) return kInfinity;
      }
    }
    return flow;
  }

 private:
  struct Arc {
    int to;
    int reverse;
    std::int64_t capacity;
  };

  bool Levels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (const Arc& arc : graph_[u]) {
        if (arc.capacity > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push(arc.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t Push(int u, int sink, std::int64_t limit) {
    if (u == sink) return limit;
    for (int& i = next_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      Arc& arc = graph_[u][i];
      if (arc.capacity <= 0 || level_[arc.to] != level_[u] + 1) continue;
      std::int64_t pushed = Push(arc.to, sink, std::min(limit, arc.capacity));
      if (pushed > 0) {
        arc.capacity -= pushed;
        graph_[arc.to][arc.reverse].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> graph_;
  std::vector<int> level_;
  std::vector<int> next_;
};

std::vector<bool> Ancestors(const Dag& dag, const std::vector<int>& seeds) {
  std::vector<bool> in(dag.size(), false);
  std::vector<int> stack;
  for (int v : seeds) {
    if (!in[v]) {
      in[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : dag.parents[v]) {
      if (!in[p]) {
        in[p] = true;
        stack.push_back(p);
      }
    }
  }
  return in;
}

// Undirected moral graph of the induced subgraph on `keep`.
std::vector<std::vector<int>> MoralGraph(const Dag& dag,
                                         const std::vector<bool>& keep) {
  int n = dag.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    const std::vector<int>& ps = dag.parents[v];
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!keep[ps[i]]) continue;
      adj[v][ps[i]] = adj[ps[i]][v] = true;
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (!keep[ps[j]]) continue;
        adj[ps[i]][ps[j]] = adj[ps[j]][ps[i]] = true;
      }
    }
  }
  std::vector<std::vector<int>> out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (adj[u][v]) out[u].push_back(v);
    }
  }
  return out;
}

// Minimum-weight vertex separator between a and b among candidates, in the
// moral graph of the ancestral set of a and b. `removed` nodes are deleted
// from the graph, `forbidden` candidates may not be cut.
class SeparatorSolver {
 public:
  SeparatorSolver(const Dag& dag, std::vector<std::int64_t> weights,
                  std::vector<bool> candidate, std::vector<int> a,
                  std::vector<int> b)
      : weights_(std::move(weights)),
        candidate_(std::move(candidate)),
        a_(std::move(a)),
        b_(std::move(b)) {
    std::vector<int> seeds = a_;
    seeds.insert(seeds.end(), b_.begin(), b_.end());
    keep_ = Ancestors(dag, seeds);
    moral_ = MoralGraph(dag, keep_);
  }

  const std::vector<bool>& keep() const { return keep_; }

  std::int64_t MinCut(const std::vector<bool>& removed,
                      const std::vector<bool>& forbidden) const {
    int n = static_cast<int>(keep_.size());
    int source = 2 * n;
    int sink = 2 * n + 1;
    MaxFlow flow(2 * n + 2);
    for (int v = 0; v < n; ++v) {
      if (!keep_[v]) continue;
      std::int64_t cap = kInfinity;
      if (removed[v]) {
        cap = 0;
      } else if (candidate_[v] && !forbidden[v]) {
        cap = weights_[v];
      }
      flow.AddArc(2 * v, 2 * v + 1, cap);
      for (int u : moral_[v]) flow.AddArc(2 * v + 1, 2 * u, kInfinity);
    }
    for (int v : a_) flow.AddArc(source, 2 * v, kInfinity);
    for (int v : b_) flow.AddArc(2 * v + 1, sink, kInfinity);
    return flow.Run(source, sink);
  }

  // Lexicographically smallest optimal set, with its weight and the
  // unconstrained cut value.
  std::vector<int> Solve(std::int64_t* cut_value) const {
    int n = static_cast<int>(keep_.size());
    std::vector<bool> removed(n, false);
    std::vector<bool> forbidden(n, false);
    std::int64_t best = MinCut(removed, forbidden);
    if (best >= kInfinity) throw std::logic_error("no finite separator");
    *cut_value = best;
    std::vector<int> chosen;
    std::int64_t chosen_weight = 0;
    for (int v = 0; v < n; ++v) {
      if (MinCut(removed, forbidden) == 0 && chosen_weight == best) break;
      if (!keep_[v] || !candidate_[v]) continue;
      removed[v] = true;
      std::int64_t rest = MinCut(removed, forbidden);
      if (rest < kInfinity && chosen_weight + weights_[v] + rest == best) {
        chosen.push_back(v);
        chosen_weight += weights_[v];
      } else {
        removed[v] = false;
        forbidden[v] = true;
      }
    }
    return chosen;
  }

 private:
  std::vector<std::int64_t> weights_;
  std::vector<bool> candidate_;
  std::vector<int> a_;
  std::vector<int> b_;
  std::vector<bool> keep_;
  std::vector<std::vector<int>> moral_;
};

std::vector<std::int64_t> VariableWeights(const PostModel& model,
                                          SeparatorObjective objective) {
  std::vector<std::int64_t> w(model.num_variables());
  for (int t = 0; t < model.num_variables(); ++t) {
    w[t] = objective == SeparatorObjective::kSetSize
               ? 1
               : LogCardinalityWeight(model.variable(t).cardinality);
  }
  return w;
}

void FillSizes(const PostModel& model, const std::vector<std::int64_t>& weights,
               Separator& sep) {
  sep.joint_size = 1;
  sep.log_size = 0.0;
  sep.set_weight = 0;
  for (int t : sep.vars) {
    int card = model.variable(t).cardinality;
    sep.joint_size = SafeMul(sep.joint_size, card);
    sep.log_size += std::log(static_cast<double>(card));
    sep.set_weight += weights[t];
  }
}

}  // namespace

void Dag::AddEdge(int from, int to) {
  parents[to].push_back(from);
  children[from].push_back(to);
}

Dag BuildInfoDag(const PostModel& model) {
  Dag dag;
  dag.parents.resize(model.num_variables());
  dag.children.resize(model.num_variables());
  for (int t = 0; t < model.num_variables(); ++t) {
    for (int parent : model.variable(t).info_set) dag.AddEdge(parent, t);
  }
  return dag;
}

Dag BuildStrippedDag(const PostModel& model) {
  Dag dag;
  dag.parents.resize(model.num_variables());
  dag.children.resize(model.num_variables());
  for (int t = 0; t < model.num_variables(); ++t) {
    if (model.variable(t).is_action()) continue;
    for (int parent : model.variable(t).info_set) dag.AddEdge(parent, t);
  }
  return dag;
}

bool DSeparated(const Dag& dag, const std::vector<int>& a,
                const std::vector<int>& b, const std::vector<int>& c) {
  int n = dag.size();
  std::vector<bool> in_c(n, false);
  for (int v : c) in_c[v] = true;
  std::vector<bool> in_b(n, false);
  for (int v : b) {
    if (!in_c[v]) in_b[v] = true;
  }
  std::vector<int> seeds = a;
  seeds.insert(seeds.end(), b.begin(), b.end());
  seeds.insert(seeds.end(), c.begin(), c.end());
  std::vector<bool> keep = Ancestors(dag, seeds);
  std::vector<std::vector<int>> moral = MoralGraph(dag, keep);
  std::vector<bool> seen(n, false);
  std::vector<int> stack;
  for (int v : a) {
    if (in_c[v] || seen[v]) continue;
    seen[v] = true;
    stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (in_b[v]) return false;
    for (int u : moral[v]) {
      if (in_c[u] || seen[u]) continue;
      seen[u] = true;
      stack.push_back(u);
    }
  }
  return true;
}

std::int64_t LogCardinalityWeight(int cardinality) {
  std::int64_t weight = 0;
  int rest = cardinality;
  for (int p = 2; p * p <= rest; ++p) {
    while (rest % p == 0) {
      weight += std::llround(std::log(static_cast<double>(p)) * 0x1.0p40);
      rest /= p;
    }
  }
  if (rest > 1) {
    weight += std::llround(std::log(static_cast<double>(rest)) * 0x1.0p40);
  }
  return weight;
}

Separator MinimalSeparator(const PostModel& model, int h,
                           SeparatorObjective objective) {
  const int H = model.horizon();
  if (h < 0 || h > H) throw std::invalid_argument("boundary out of range");
  Separator sep;
  sep.h = h;
  if (h == 0 || h == H) return sep;
  std::vector<std::int64_t> weights = VariableWeights(model, objective);
  std::vector<int> past;
  std::vector<int> future;
  for (int p = 0; p < H; ++p) {
    (p < h ? past : future).push_back(model.observable_variable(p));
  }
  int first_future = model.observable_variable(h);
  std::vector<bool> candidate(model.num_variables(), false);
  for (int t = 0; t < first_future; ++t) candidate[t] = true;
  SeparatorSolver solver(BuildStrippedDag(model), weights, candidate, past,
                         future);
  sep.vars = solver.Solve(&sep.cut_weight);
  FillSizes(model, weights, sep);
  return sep;
}

std::vector<Separator> AllSeparators(const PostModel& model,
                                     SeparatorObjective objective) {
  std::vector<Separator> out;
  for (int h = 0; h <= model.horizon(); ++h) {
    out.push_back(MinimalSeparator(model, h, objective));
  }
  return out;
}

std::int64_t RankBound(const PostModel& model) {
  std::int64_t bound = 1;
  for (const Separator& sep : AllSeparators(model)) {
    bound = std::max(bound, sep.joint_size);
  }
  return bound;
}

int NumericalRank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  double threshold = rel_tol * std::max(s(0), 1.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return rank;
}

std::vector<RankCheck> VerifyRankBound(const PostModel& model,
                                       std::int64_t budget) {
  std::vector<double> table = DoTable(model, budget);
  std::vector<RankCheck> out;
  for (int h = 0; h <= model.horizon(); ++h) {
    RankCheck check;
    check.h = h;
    check.separator = MinimalSeparator(model, h);
    check.numerical_rank = NumericalRank(ReshapeDoTable(table, model, h));
    check.ok = check.numerical_rank <= check.separator.joint_size;
    out.push_back(check);
  }
  return out;
}

Factorization FactorizeDynamics(const PostModel& model, int h,
                                std::int64_t budget) {
  const int H = model.horizon();
  Factorization f;
  f.separator = MinimalSeparator(model, h);
  const std::vector<int>& sep = f.separator.vars;
  std::vector<int> sep_cards;
  for (int t : sep) sep_cards.push_back(model.variable(t).cardinality);
  ProductSpace sep_space(sep_cards);
  std::int64_t rows = model.PositionCount(0, h);
  CheckBudget("factorization", SafeMul(rows, sep_space.size()), budget);
  f.first = Eigen::MatrixXd::Zero(rows, sep_space.size());
  double scale = 1.0 / static_cast<double>(model.ActionCount(h, H));
  EnumerateJoint(model, budget, [&](const int* values, double w) {
    std::int64_t r = 0;
    for (int p = 0; p < h; ++p) {
      r = r * model.position_card(p) + values[model.observable_variable(p)];
    }
    std::int64_t c = 0;
    for (std::size_t j = 0; j < sep.size(); ++j) {
      c = c * sep_cards[j] + values[sep[j]];
    }
    f.first(r, c) += w * scale;
  });
  std::vector<int> future;
  for (int p = h; p < H; ++p) future.push_back(p);
  f.second = ConditionalFutureTable(model, sep, future, budget).table.transpose();
  Eigen::MatrixXd d = DynamicsMatrix(model, h, budget);
  f.max_error = (d - f.first * f.second).cwiseAbs().maxCoeff();
  return f;
}

AggregatedBound AggregatedRankBound(const PostModel& model) {
  const int n = model.num_variables();
  const int H = model.horizon();
  // Group index of each observable position.
  std::vector<int> pos_group(H);
  AggregatedBound out;
  int group = 0;
  for (int p = 0; p < H; ++p) {
    pos_group[p] = group;
    bool ends = (p + 1 == H) ||
                (model.is_action_position(p) && !model.is_action_position(p + 1));
    if (ends) {
      out.boundaries.push_back(p + 1);
      ++group;
    }
  }
  const int groups = group;
  std::vector<int> var_group(n);
  for (int t = 0, p = 0; t < n; ++t) {
    while (p < H && model.observable_variable(p) < t) ++p;
    var_group[t] = p < H ? pos_group[p] : groups - 1;
  }
  Dag merged;
  merged.parents.resize(groups);
  merged.children.resize(groups);
  std::vector<std::vector<bool>> edge(groups, std::vector<bool>(groups, false));
  Dag stripped = BuildStrippedDag(model);
  for (int t = 0; t < n; ++t) {
    for (int parent : stripped.parents[t]) {
      int g = var_group[parent];
      int k = var_group[t];
      if (g != k && !edge[g][k]) {
        edge[g][k] = true;
        merged.AddEdge(g, k);
      }
    }
  }
  std::vector<std::int64_t> weights(groups, 0);
  std::vector<std::int64_t> sizes(groups, 1);
  for (int t = 0; t < n; ++t) {
    int card = model.variable(t).cardinality;
    weights[var_group[t]] += LogCardinalityWeight(card);
    sizes[var_group[t]] = SafeMul(sizes[var_group[t]], card);
  }
  for (int g = 0; g < groups; ++g) {
    int h = out.boundaries[g];
    std::int64_t size = 1;
    if (h < H) {
      std::vector<int> past;
      std::vector<int> future;
      std::vector<bool> candidate(groups, false);
      for (int k = 0; k < groups; ++k) {
        (k <= g ? past : future).push_back(k);
        candidate[k] = k <= g;
      }
      SeparatorSolver solver(merged, weights, candidate, past, future);
      std::int64_t cut = 0;
      for (int k : solver.Solve(&cut)) size = SafeMul(size, sizes[k]);
    }
    out.separator_sizes.push_back(size);
    out.rank_bound = std::max(out.rank_bound, size);
  }
  return out;
}

}  // namespace istruct
