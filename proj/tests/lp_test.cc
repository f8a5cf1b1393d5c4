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

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "istruct/lp.h"
#include "istruct/rng.h"

namespace istruct {
namespace {

LpProblem<mpq_class> ToRational(const LpProblem<double>& lp) {
  LpProblem<mpq_class> q;
  q.num_vars = lp.num_vars;
  for (double v : lp.objective) q.objective.emplace_back(v);
  for (const auto& row : lp.eq_lhs) {
    q.eq_lhs.emplace_back(row.begin(), row.end());
  }
  for (double v : lp.eq_rhs) q.eq_rhs.emplace_back(v);
  for (const auto& row : lp.le_lhs) {
    q.le_lhs.emplace_back(row.begin(), row.end());
  }
  for (double v : lp.le_rhs) q.le_rhs.emplace_back(v);
  return q;
}

// Best vertex by enumerating every choice of n tight constraints among the
// inequalities, equalities and bounds. Returns NaN when no vertex is
// feasible.
double VertexOracle(const LpProblem<double>& lp) {
  const int n = lp.num_vars;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < lp.le_lhs.size(); ++i) {
    rows.push_back(lp.le_lhs[i]);
    rhs.push_back(lp.le_rhs[i]);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = -1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  const int m = static_cast<int>(rows.size());
  const int neq = static_cast<int>(lp.eq_lhs.size());
  const int free = n - neq;
  double best = std::nan("");
  std::vector<int> pick(free);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == free) {
      Eigen::MatrixXd a(n, n);
      Eigen::VectorXd b(n);
      for (int i = 0; i < neq; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = lp.eq_lhs[i][j];
        b(i) = lp.eq_rhs[i];
      }
      for (int k = 0; k < free; ++k) {
        for (int j = 0; j < n; ++j) a(neq + k, j) = rows[pick[k]][j];
        b(neq + k) = rhs[pick[k]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < n) return;
      Eigen::VectorXd x = lu.solve(b);
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += rows[i][j] * x(j);
        if (s > rhs[i] + 1e-9) return;
      }
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += lp.objective[j] * x(j);
      if (std::isnan(best) || v > best) best = v;
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

TEST_CASE("textbook maximization") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18: optimum 36 at (2, 6).
  LpProblem<double> lp;
  lp.num_vars = 2;
  lp.objective = {3, 5};
  lp.le_lhs = {{1, 0}, {0, 2}, {3, 2}};
  lp.le_rhs = {4, 12, 18};
  LpSolution<double> s = SolveLp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(36));
  CHECK(s.x[0] == doctest::Approx(2));
  CHECK(s.x[1] == doctest::Approx(6));
  LpSolution<mpq_class> q = SolveLp(ToRational(lp));
  REQUIRE(q.status == LpStatus::kOptimal);
  CHECK(q.value == 36);
  CHECK(q.x[0] == 2);
  CHECK(q.x[1] == 6);
}

TEST_CASE("equalities and negative right-hand sides need phase one") {
  // max -x - y s.t. x + y = 1, -x <= -0.25: optimum -1 with x >= 0.25.
  LpProblem<double> lp;
  lp.num_vars = 2;
  lp.objective = {-1, -1};
  lp.eq_lhs = {{1, 1}};
  lp.eq_rhs = {1};
  lp.le_lhs = {{-1, 0}};
  lp.le_rhs = {-0.25};
  LpSolution<double> s = SolveLp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(-1));
  CHECK(s.x[0] >= 0.25 - 1e-12);
}

TEST_CASE("infeasible and unbounded programs are detected") {
  LpProblem<double> infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {1};
  infeasible.le_lhs = {{1}, {-1}};
  infeasible.le_rhs = {1, -2};
  CHECK(SolveLp(infeasible).status == LpStatus::kInfeasible);
  CHECK(SolveLp(ToRational(infeasible)).status == LpStatus::kInfeasible);

  LpProblem<double> unbounded;
  unbounded.num_vars = 2;
  unbounded.objective = {1, 1};
  unbounded.le_lhs = {{1, -1}};
  unbounded.le_rhs = {1};
  CHECK(SolveLp(unbounded).status == LpStatus::kUnbounded);
  CHECK(SolveLp(ToRational(unbounded)).status == LpStatus::kUnbounded);
}

TEST_CASE("redundant equalities are tolerated") {
  LpProblem<mpq_class> lp;
  lp.num_vars = 3;
  lp.objective = {1, 2, 3};
  lp.eq_lhs = {{1, 1, 1}, {2, 2, 2}};
  lp.eq_rhs = {1, 2};
  LpSolution<mpq_class> s = SolveLp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == 3);
}

TEST_CASE("a cycling-prone degenerate program terminates") {
  // Beale's example, which cycles under the largest-coefficient rule.
  LpProblem<mpq_class> lp;
  lp.num_vars = 4;
  lp.objective = {mpq_class(3, 4), -150, mpq_class(1, 50), -6};
  lp.le_lhs = {{mpq_class(1, 4), -60, mpq_class(-1, 25), 9},
               {mpq_class(1, 2), -90, mpq_class(-1, 50), 3},
               {0, 0, 1, 0}};
  lp.le_rhs = {0, 0, 1};
  LpSolution<mpq_class> s = SolveLp(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == mpq_class(1, 20));
}

TEST_CASE("random programs agree with vertex enumeration in both "
          "arithmetics") {
  SplitMixRng rng(17);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LpProblem<double> lp;
    lp.num_vars = 2 + rng.UniformInt(2);
    const int n = lp.num_vars;
    for (int j = 0; j < n; ++j) lp.objective.push_back(rng.UniformInt(11) - 5);
    int rows = 2 + rng.UniformInt(3);
    for (int i = 0; i < rows; ++i) {
      std::vector<double> row;
      for (int j = 0; j < n; ++j) row.push_back(rng.UniformInt(9) - 2);
      lp.le_lhs.push_back(row);
      lp.le_rhs.push_back(rng.UniformInt(10) - 2);
    }
    // Keep the region bounded.
    lp.le_lhs.push_back(std::vector<double>(n, 1.0));
    lp.le_rhs.push_back(10);
    if (rng.UniformInt(2) == 0) {
      std::vector<double> eq;
      for (int j = 0; j < n; ++j) eq.push_back(1 + rng.UniformInt(3));
      lp.eq_lhs.push_back(eq);
      lp.eq_rhs.push_back(1 + rng.UniformInt(5));
    }
    double oracle = VertexOracle(lp);
    LpSolution<double> s = SolveLp(lp);
    LpSolution<mpq_class> q = SolveLp(ToRational(lp));
    if (std::isnan(oracle)) {
      CHECK(s.status == LpStatus::kInfeasible);
      CHECK(q.status == LpStatus::kInfeasible);
      continue;
    }
    ++solved;
    REQUIRE(s.status == LpStatus::kOptimal);
    REQUIRE(q.status == LpStatus::kOptimal);
    CHECK(s.value == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(q.value.get_d() == doctest::Approx(oracle).epsilon(1e-9));
    // The exact solution is feasible with no slack at all.
    const LpProblem<mpq_class> r = ToRational(lp);
    for (std::size_t i = 0; i < r.le_lhs.size(); ++i) {
      mpq_class acc = 0;
      for (int j = 0; j < n; ++j) acc += r.le_lhs[i][j] * q.x[j];
      CHECK(acc <= r.le_rhs[i]);
    }
    for (std::size_t i = 0; i < r.eq_lhs.size(); ++i) {
      mpq_class acc = 0;
      for (int j = 0; j < n; ++j) acc += r.eq_lhs[i][j] * q.x[j];
      CHECK(acc == r.eq_rhs[i]);
    }
    for (int j = 0; j < n; ++j) CHECK(q.x[j] >= 0);
  }
  CHECK(solved > 50);
}

}  // namespace
}  // namespace istruct
