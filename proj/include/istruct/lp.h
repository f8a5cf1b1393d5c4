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

#ifndef ISTRUCT_LP_H_
#define ISTRUCT_LP_H_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace istruct {

template <typename Scalar>
struct LpTraits;

template <>
struct LpTraits<double> {
  static constexpr double kEps = 1e-11;
  static bool Positive(double v) { return v > kEps; }
  static bool Negative(double v) { return v < -kEps; }
  static bool Less(double a, double b) { return a < b - kEps; }
  static bool Equal(double a, double b) { return std::abs(a - b) <= kEps; }
};

template <>
struct LpTraits<mpq_class> {
  static bool Positive(const mpq_class& v) { return sgn(v) > 0; }
  static bool Negative(const mpq_class& v) { return sgn(v) < 0; }
  static bool Less(const mpq_class& a, const mpq_class& b) { return a < b; }
  static bool Equal(const mpq_class& a, const mpq_class& b) { return a == b; }
};

// maximize objective . x  subject to  eq_lhs x = eq_rhs,
// le_lhs x <= le_rhs, x >= 0.
template <typename Scalar>
struct LpProblem {
  int num_vars = 0;
  std::vector<Scalar> objective;
  std::vector<std::vector<Scalar>> eq_lhs;
  std::vector<Scalar> eq_rhs;
  std::vector<std::vector<Scalar>> le_lhs;
  std::vector<Scalar> le_rhs;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Scalar> x;
  Scalar value = 0;
  int pivots = 0;
};

// Dense two-phase simplex with Bland's rule, so the pivot sequence and the
// returned vertex are deterministic.
template <typename Scalar>
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpProblem<Scalar>& lp) : lp_(lp) {}

  LpSolution<Scalar> Solve() {
    Build();
    LpSolution<Scalar> out;
    // Phase one: minimize the sum of artificial variables.
    std::vector<Scalar> phase1(cols_, Scalar(0));
    for (int j = art_begin_; j < cols_; ++j) phase1[j] = 1;
    SetObjective(phase1);
    if (!Run(cols_)) throw std::logic_error("phase one cannot be unbounded");
    if (LpTraits<Scalar>::Positive(Scalar(-obj_[cols_]))) {
      out.status = LpStatus::kInfeasible;
      out.pivots = pivots_;
      return out;
    }
    DriveOutArtificials();
    std::vector<Scalar> phase2(cols_, Scalar(0));
    for (int j = 0; j < lp_.num_vars; ++j) phase2[j] = -lp_.objective[j];
    SetObjective(phase2);
    if (!Run(art_begin_)) {
      out.status = LpStatus::kUnbounded;
      out.pivots = pivots_;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.x.assign(lp_.num_vars, Scalar(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < lp_.num_vars) out.x[basis_[r]] = rows_[r][cols_];
    }
    out.value = 0;
    for (int j = 0; j < lp_.num_vars; ++j) out.value += lp_.objective[j] * out.x[j];
    out.pivots = pivots_;
    return out;
  }

 private:
  using Row = std::vector<Scalar>;

  void Build() {
    const int n = lp_.num_vars;
    const int n_eq = static_cast<int>(lp_.eq_lhs.size());
    const int n_le = static_cast<int>(lp_.le_lhs.size());
    // Columns: decision variables, one slack per inequality, then one
    // artificial per row that lacks a +1 slack.
    std::vector<bool> flip_le(n_le);
    int artificials = n_eq;
    for (int i = 0; i < n_le; ++i) {
      flip_le[i] = LpTraits<Scalar>::Negative(lp_.le_rhs[i]);
      if (flip_le[i]) ++artificials;
    }
    art_begin_ = n + n_le;
    cols_ = art_begin_ + artificials;
    int next_art = art_begin_;
    for (int i = 0; i < n_eq; ++i) {
      Row row(cols_ + 1, Scalar(0));
      bool flip = LpTraits<Scalar>::Negative(lp_.eq_rhs[i]);
      for (int j = 0; j < n; ++j) row[j] = flip ? Scalar(-lp_.eq_lhs[i][j]) : lp_.eq_lhs[i][j];
      row[cols_] = flip ? Scalar(-lp_.eq_rhs[i]) : lp_.eq_rhs[i];
      row[next_art] = 1;
      basis_.push_back(next_art++);
      rows_.push_back(std::move(row));
    }
    for (int i = 0; i < n_le; ++i) {
      Row row(cols_ + 1, Scalar(0));
      for (int j = 0; j < n; ++j) {
        row[j] = flip_le[i] ? Scalar(-lp_.le_lhs[i][j]) : lp_.le_lhs[i][j];
      }
      row[n + i] = flip_le[i] ? -1 : 1;
      row[cols_] = flip_le[i] ? Scalar(-lp_.le_rhs[i]) : lp_.le_rhs[i];
      if (flip_le[i]) {
        row[next_art] = 1;
        basis_.push_back(next_art++);
      } else {
        basis_.push_back(n + i);
      }
      rows_.push_back(std::move(row));
    }
  }

  // Reduced costs of the given minimization objective for the current basis.
  void SetObjective(const std::vector<Scalar>& cost) {
    obj_.assign(cols_ + 1, Scalar(0));
    for (int j = 0; j < cols_; ++j) obj_[j] = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Scalar cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (int j = 0; j <= cols_; ++j) obj_[j] -= cb * rows_[r][j];
    }
  }

  void Pivot(std::size_t r, int c) {
    Scalar inv = Scalar(1) / rows_[r][c];
    for (int j = 0; j <= cols_; ++j) rows_[r][j] *= inv;
    rows_[r][c] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Scalar f = rows_[i][c];
      for (int j = 0; j <= cols_; ++j) rows_[i][j] -= f * rows_[r][j];
      rows_[i][c] = 0;
    }
    if (obj_[c] != 0) {
      Scalar f = obj_[c];
      for (int j = 0; j <= cols_; ++j) obj_[j] -= f * rows_[r][j];
      obj_[c] = 0;
    }
    basis_[r] = c;
    ++pivots_;
  }

  // Minimizes over columns [0, allowed). Returns false if unbounded.
  bool Run(int allowed) {
    for (int iter = 0;; ++iter) {
      if (iter > kMaxPivots) throw std::runtime_error("simplex did not converge");
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (LpTraits<Scalar>::Negative(obj_[j])) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Scalar best = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!LpTraits<Scalar>::Positive(rows_[r][enter])) continue;
        Scalar ratio = rows_[r][cols_] / rows_[r][enter];
        if (leave < 0 || LpTraits<Scalar>::Less(ratio, best) ||
            (LpTraits<Scalar>::Equal(ratio, best) &&
             basis_[r] < basis_[leave])) {
          leave = static_cast<int>(r);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(static_cast<std::size_t>(leave), enter);
    }
  }

  void DriveOutArtificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < art_begin_) {
        ++r;
        continue;
      }
      int c = -1;
      for (int j = 0; j < art_begin_; ++j) {
        if (LpTraits<Scalar>::Positive(rows_[r][j]) ||
            LpTraits<Scalar>::Negative(rows_[r][j])) {
          c = j;
          break;
        }
      }
      if (c >= 0) {
        Pivot(r, c);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  static constexpr int kMaxPivots = 1000000;

  const LpProblem<Scalar>& lp_;
  std::vector<Row> rows_;
  std::vector<int> basis_;
  Row obj_;
  int cols_ = 0;
  int art_begin_ = 0;
  int pivots_ = 0;
};

template <typename Scalar>
LpSolution<Scalar> SolveLp(const LpProblem<Scalar>& lp) {
  return SimplexSolver<Scalar>(lp).Solve();
}

}  // namespace istruct

#endif  // ISTRUCT_LP_H_
