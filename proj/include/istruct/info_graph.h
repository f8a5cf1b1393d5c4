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

#ifndef ISTRUCT_INFO_GRAPH_H_
#define ISTRUCT_INFO_GRAPH_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "istruct/common.h"
#include "istruct/model.h"

namespace istruct {

// Directed acyclic graph with edges parent -> child over nodes 0..n-1.
struct Dag {
  std::vector<std::vector<int>> parents;
  std::vector<std::vector<int>> children;

  int size() const { return static_cast<int>(parents.size()); }
  void AddEdge(int from, int to);
};

// Information structure: edge j -> t for every j in the information set of t.
Dag BuildInfoDag(const PostModel& model);
// The same graph with all incoming edges of action variables removed.
Dag BuildStrippedDag(const PostModel& model);

// True iff a and b are d-separated given c. Nodes of a that lie in c are
// dropped before testing; a node shared by a and b outside c makes the sets
// dependent.
bool DSeparated(const Dag& dag, const std::vector<int>& a,
                const std::vector<int>& b, const std::vector<int>& c);

enum class SeparatorObjective {
  // Minimize the product of cardinalities (exact integer log weights).
  kJointCardinality,
  // Minimize the number of variables.
  kSetSize,
};

// Separator at boundary h: the past is observable positions [0, h), the
// future positions [h, H). Candidates are all variables preceding the first
// future observable, so latent variables between the last past observable
// and the first future one are eligible.
struct Separator {
  int h = 0;
  // Sorted variable indices.
  std::vector<int> vars;
  // Product of cardinalities (saturating).
  std::int64_t joint_size = 1;
  double log_size = 0.0;
  // Integer objective value of the minimum cut and of `vars`.
  std::int64_t cut_weight = 0;
  std::int64_t set_weight = 0;
};

// Minimum-weight set of candidates d-separating past from future observables
// in the stripped graph. Ties are broken towards the lexicographically
// smallest sorted id list.
Separator MinimalSeparator(const PostModel& model, int h,
                           SeparatorObjective objective =
                               SeparatorObjective::kJointCardinality);
// Separators for every boundary 0..H.
std::vector<Separator> AllSeparators(const PostModel& model,
                                     SeparatorObjective objective =
                                         SeparatorObjective::kJointCardinality);

// Exact integer weight of a variable of the given cardinality:
// sum over prime factors p^e of e * round(log(p) * 2^40).
std::int64_t LogCardinalityWeight(int cardinality);

// max_h |I_h|.
std::int64_t RankBound(const PostModel& model);

struct RankCheck {
  int h = 0;
  Separator separator;
  int numerical_rank = 0;
  bool ok = false;
};
// Numerical rank of every dynamics matrix against its separator size.
std::vector<RankCheck> VerifyRankBound(const PostModel& model,
                                       std::int64_t budget = kDefaultBudget);

// D_h = first * second with first |H_h| x |I_h| and second |I_h| x |F_h|.
struct Factorization {
  Separator separator;
  Eigen::MatrixXd first;
  Eigen::MatrixXd second;
  double max_error = 0.0;
};
Factorization FactorizeDynamics(const PostModel& model, int h,
                                std::int64_t budget = kDefaultBudget);

// Numerical rank with threshold rel_tol * sigma_max (and an absolute floor
// of rel_tol when sigma_max < 1).
int NumericalRank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

// Diagnostic for the classical pairing of each observation block with the
// following action block. Consecutive observables are merged into groups
// that end right after an action block; latent variables join the group of
// the next observable. Separators are computed in the merged graph at group
// boundaries only.
struct AggregatedBound {
  // Boundaries h (in the original numbering) that end a group.
  std::vector<int> boundaries;
  // Joint size of the merged-graph separator at each boundary.
  std::vector<std::int64_t> separator_sizes;
  std::int64_t rank_bound = 1;
};
AggregatedBound AggregatedRankBound(const PostModel& model);

}  // namespace istruct

#endif  // ISTRUCT_INFO_GRAPH_H_
