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

#include "istruct/gpsr.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "istruct/dynamics.h"
#include "istruct/linalg.h"

namespace istruct {
namespace {

constexpr double kPinvFloor = 1e-10;

std::vector<int> Range(int begin, int end) {
  std::vector<int> out;
  for (int p = begin; p < end; ++p) out.push_back(p);
  return out;
}

// Folds leaf values over positions [h, H): max at action positions, sum at
// system positions. Leaves are in lexicographic order.
double FoldFuture(const GpsrModel& psr, int h, Eigen::VectorXd values) {
  for (int p = psr.horizon() - 1; p >= h; --p) {
    int card = psr.cards[p];
    Eigen::Index n = values.size() / card;
    Eigen::VectorXd next(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto block = values.segment(i * card, card);
      next(i) = psr.is_action[p] ? block.maxCoeff() : block.sum();
    }
    values = std::move(next);
  }
  return values(0);
}

void WriteU32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void WriteF64(std::ostream& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void WriteMatrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) WriteF64(out, m(r, c));
  }
}

}  // namespace

CoreTests MakeCoreTests(const PostModel& model, int h, int m) {
  const int H = model.horizon();
  if (m < 1) throw std::invalid_argument("core test length must be positive");
  if (h < 0 || h >= H) throw std::invalid_argument("step out of range");
  CoreTests tests;
  tests.h = h;
  tests.begin = h;
  tests.end = std::min(h + m, H);
  std::vector<int> cards;
  for (int p = tests.begin; p < tests.end; ++p) {
    cards.push_back(model.position_card(p));
  }
  tests.space = ProductSpace(cards);
  tests.action_count = model.ActionCount(tests.begin, tests.end);
  tests.full_future = tests.end == H;
  return tests;
}

GStep ComputeGStep(const PostModel& model, int h, int m, std::int64_t budget) {
  GStep step;
  step.h = h;
  step.separator = MinimalSeparator(model, h);
  step.tests = MakeCoreTests(model, h, m);
  step.gated = h + m < model.horizon();
  ConditionalTable table = ConditionalFutureTable(
      model, step.separator.vars, Range(step.tests.begin, step.tests.end),
      budget);
  step.g = std::move(table.table);
  for (double mass : table.column_mass) {
    if (mass <= 0.0) ++step.zero_columns;
  }
  step.sigma = KthSingularValue(step.g, static_cast<int>(step.g.cols()));
  return step;
}

RevealingReport WeaklyRevealingCheck(const PostModel& model, int m,
                                     double alpha, std::int64_t budget) {
  RevealingReport report;
  report.m = m;
  report.alpha = alpha;
  for (int h = 0; h < model.horizon(); ++h) {
    GStep step = ComputeGStep(model, h, m, budget);
    if (step.gated) {
      report.min_sigma = std::min(report.min_sigma, step.sigma);
      if (step.sigma < alpha && report.failing_h < 0) report.failing_h = h;
    }
    report.steps.push_back(std::move(step));
  }
  report.passed = report.failing_h < 0;
  return report;
}

GpsrModel ConstructGpsrFromPost(const PostModel& model, int m,
                                double alpha_reveal, std::int64_t budget) {
  const int H = model.horizon();
  if (m < 1) throw std::invalid_argument("core test length must be positive");
  GpsrModel psr;
  psr.m = m;
  for (int p = 0; p < H; ++p) {
    psr.cards.push_back(model.position_card(p));
    psr.is_action.push_back(model.is_action_position(p));
  }
  std::vector<GStep> steps;
  std::vector<Eigen::MatrixXd> pinv(H);
  double floor = std::max(alpha_reveal, kPinvFloor);
  for (int h = 0; h < H; ++h) {
    GStep step = ComputeGStep(model, h, m, budget);
    if (step.gated) {
      if (step.sigma < floor) {
        throw ConstructionRefused(
            "step " + std::to_string(h) + ": sigma_min(G) = " +
            std::to_string(step.sigma) + " is below " + std::to_string(floor));
      }
      pinv[h] = PseudoInverse(step.g);
      psr.alpha = std::min(psr.alpha, step.sigma);
    }
    psr.dims.push_back(static_cast<int>(step.tests.space.size()));
    psr.test_actions.push_back(step.tests.action_count);
    psr.separators.push_back(step.separator);
    psr.sigmas.push_back(step.sigma);
    psr.gated.push_back(step.gated);
    steps.push_back(std::move(step));
  }
  psr.psi0 = ConditionalFutureTable(model, {}, Range(0, steps[0].tests.end),
                                    budget)
                 .table.col(0);
  psr.ops.resize(H);
  for (int h = 1; h < H; ++h) {
    const int card = psr.cards[h - 1];
    const int rows = psr.dims[h];
    const int cols = psr.dims[h - 1];
    psr.ops[h].resize(card);
    if (!steps[h - 1].gated) {
      for (int x = 0; x < card; ++x) {
        Eigen::MatrixXd op = Eigen::MatrixXd::Zero(rows, cols);
        for (int q = 0; q < rows; ++q) op(q, x * rows + q) = 1.0;
        psr.ops[h][x] = std::move(op);
      }
      continue;
    }
    Eigen::MatrixXd table =
        ConditionalFutureTable(model, steps[h - 1].separator.vars,
                               Range(h - 1, steps[h].tests.end), budget)
            .table;
    for (int x = 0; x < card; ++x) {
      psr.ops[h][x] = table.middleRows(x * rows, rows) * pinv[h - 1];
    }
  }
  const int last = psr.cards[H - 1];
  psr.final_weights = Eigen::MatrixXd::Identity(psr.dims[H - 1], last);
  psr.phi.resize(H);
  double scale = psr.is_action[H - 1] ? 1.0 / last : 1.0;
  psr.phi[H - 1] = psr.final_weights.rowwise().sum() * scale;
  for (int h = H - 1; h >= 1; --h) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(psr.dims[h - 1]);
    for (const Eigen::MatrixXd& op : psr.ops[h]) acc += op.transpose() * psr.phi[h];
    double s = psr.is_action[h - 1] ? 1.0 / psr.cards[h - 1] : 1.0;
    psr.phi[h - 1] = acc * s;
  }
  return psr;
}

Eigen::VectorXd PredictionVector(const GpsrModel& psr, const int* prefix,
                                 int h) {
  Eigen::VectorXd psi = psr.psi0;
  for (int j = 1; j <= h; ++j) psi = psr.ops[j][prefix[j - 1]] * psi;
  return psi;
}

double PsrProbability(const GpsrModel& psr, const int* prefix, int h) {
  const int H = psr.horizon();
  if (h < 0 || h > H) throw std::invalid_argument("prefix length out of range");
  if (h < H) return psr.phi[h].dot(PredictionVector(psr, prefix, h));
  return psr.final_weights.col(prefix[H - 1])
      .dot(PredictionVector(psr, prefix, H - 1));
}

double PsrProbability(const GpsrModel& psr, const std::vector<int>& prefix) {
  return PsrProbability(psr, prefix.data(), static_cast<int>(prefix.size()));
}

PredictionFeature ComputePredictionFeature(const GpsrModel& psr,
                                           const int* prefix, int h) {
  if (h < 0 || h >= psr.horizon()) {
    throw std::invalid_argument("prefix length out of range");
  }
  PredictionFeature f;
  f.psi = PredictionVector(psr, prefix, h);
  f.probability = psr.phi[h].dot(f.psi);
  if (f.probability > kZeroSupport) f.psi_bar = f.psi / f.probability;
  return f;
}

Eigen::MatrixXd FutureWeights(const GpsrModel& psr, int h) {
  const int H = psr.horizon();
  Eigen::MatrixXd w = psr.final_weights.transpose();
  for (int j = H - 1; j > h; --j) {
    const int card = psr.cards[j - 1];
    Eigen::MatrixXd next(w.rows() * card, psr.dims[j - 1]);
    for (int x = 0; x < card; ++x) {
      next.middleRows(x * w.rows(), w.rows()) = w * psr.ops[j][x];
    }
    w = std::move(next);
  }
  return w;
}

std::vector<double> PsrDoTable(const GpsrModel& psr) {
  Eigen::VectorXd all = FutureWeights(psr, 0) * psr.psi0;
  return std::vector<double>(all.data(), all.data() + all.size());
}

double FutureNormValue(const GpsrModel& psr, int h, const Eigen::VectorXd& z) {
  return FoldFuture(psr, h, (FutureWeights(psr, h) * z).cwiseAbs());
}

double StepNormValue(const GpsrModel& psr, int h, const Eigen::VectorXd& z) {
  double acc = 0.0;
  for (const Eigen::MatrixXd& op : psr.ops[h]) {
    double norm = (op * z).lpNorm<1>();
    acc = psr.is_action[h - 1] ? std::max(acc, norm) : acc + norm;
  }
  return acc;
}

GammaReport MeasureGamma(const GpsrModel& psr) {
  const int H = psr.horizon();
  GammaReport report;
  report.future_norm.assign(H, 0.0);
  report.step_norm.assign(H, 0.0);
  report.step_gamma.assign(H, 0.0);
  Eigen::MatrixXd w = psr.final_weights.transpose();
  for (int h = H - 1; h >= 0; --h) {
    if (h < H - 1) {
      const int card = psr.cards[h];
      Eigen::MatrixXd next(w.rows() * card, psr.dims[h]);
      for (int x = 0; x < card; ++x) {
        next.middleRows(x * w.rows(), w.rows()) = w * psr.ops[h + 1][x];
      }
      w = std::move(next);
    }
    double best = 0.0;
    for (Eigen::Index i = 0; i < w.cols(); ++i) {
      best = std::max(best, FoldFuture(psr, h, w.col(i).cwiseAbs()));
    }
    report.future_norm[h] = best;
  }
  for (int h = 1; h < H; ++h) {
    double best = 0.0;
    for (int j = 0; j < psr.dims[h - 1]; ++j) {
      double acc = 0.0;
      for (const Eigen::MatrixXd& op : psr.ops[h]) {
        double norm = op.col(j).lpNorm<1>();
        acc = psr.is_action[h - 1] ? std::max(acc, norm) : acc + norm;
      }
      best = std::max(best, acc);
    }
    report.step_norm[h] = best;
  }
  report.gamma = std::numeric_limits<double>::infinity();
  for (int h = 0; h < H; ++h) {
    double g = 1.0 / report.future_norm[h];
    if (h >= 1) {
      g = std::min(g, static_cast<double>(psr.test_actions[h]) /
                          report.step_norm[h]);
    }
    report.step_gamma[h] = g;
    report.gamma = std::min(report.gamma, g);
  }
  double max_sep = 0.0;
  for (int h = 0; h < H; ++h) {
    if (psr.gated[h]) {
      max_sep = std::max(
          max_sep, std::sqrt(static_cast<double>(psr.separators[h].joint_size)));
    }
  }
  report.theorem_gamma = max_sep > 0.0 ? psr.alpha / max_sep : 1.0;
  return report;
}

OomModel ConstructOom(const PostModel& model, std::int64_t budget) {
  const int H = model.horizon();
  std::vector<double> table = DoTable(model, budget);
  OomModel oom;
  for (int p = 0; p < H; ++p) {
    oom.cards.push_back(model.position_card(p));
    oom.is_action.push_back(model.is_action_position(p));
  }
  std::vector<Eigen::MatrixXd> bases(H + 1);
  for (int h = 0; h <= H; ++h) {
    Eigen::MatrixXd dt = ReshapeDoTable(table, model, h).transpose();
    if (h == 0) {
      bases[0] = dt / dt.norm();
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(dt, Eigen::ComputeThinU);
      const Eigen::VectorXd& s = svd.singularValues();
      int r = 0;
      while (r < s.size() && s(r) > 1e-9 * s(0)) ++r;
      bases[h] = svd.matrixU().leftCols(r);
    }
    oom.ranks.push_back(static_cast<int>(bases[h].cols()));
    double scale = 1.0 / static_cast<double>(model.ActionCount(h, H));
    oom.v.push_back(bases[h].colwise().sum().transpose() * scale);
    if (h == 0) {
      oom.b0 = bases[0].transpose() * dt;
    }
  }
  oom.ops.resize(H + 1);
  for (int h = 1; h <= H; ++h) {
    const int card = oom.cards[h - 1];
    const Eigen::Index rows = bases[h].rows();
    for (int x = 0; x < card; ++x) {
      oom.ops[h].push_back(bases[h].transpose() *
                           bases[h - 1].middleRows(x * rows, rows));
    }
  }
  return oom;
}

double OomProbability(const OomModel& oom, const int* prefix, int h) {
  Eigen::VectorXd state = oom.b0;
  for (int j = 1; j <= h; ++j) state = oom.ops[j][prefix[j - 1]] * state;
  return oom.v[h].dot(state);
}

OomCheck CheckOom(const OomModel& oom, const PostModel& model,
                  const std::vector<double>& do_table) {
  const int H = oom.horizon();
  OomCheck check;
  for (int h = 1; h <= H; ++h) {
    for (const Eigen::MatrixXd& op : oom.ops[h]) {
      check.max_operator_norm = std::max(check.max_operator_norm, SpectralNorm(op));
    }
  }
  check.b0_norm = oom.b0.norm();
  check.b0_bound = std::sqrt(static_cast<double>(model.ActionCount(0, H)));
  for (int h = 0; h <= H; ++h) {
    double obs = static_cast<double>(model.PositionCount(h, H)) /
                 static_cast<double>(model.ActionCount(h, H));
    double bound = std::sqrt(obs / static_cast<double>(model.ActionCount(h, H)));
    check.max_v_ratio = std::max(check.max_v_ratio, oom.v[h].norm() / bound);
  }
  for (int h = 1; h <= H; ++h) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(oom.ranks[h - 1]);
    for (const Eigen::MatrixXd& op : oom.ops[h]) acc += op.transpose() * oom.v[h];
    if (oom.is_action[h - 1]) acc /= oom.cards[h - 1];
    check.recursion_error =
        std::max(check.recursion_error, (acc - oom.v[h - 1]).cwiseAbs().maxCoeff());
  }
  // States of every prefix, one column per prefix in lexicographic order.
  Eigen::MatrixXd states = oom.b0;
  for (int h = 0; h <= H; ++h) {
    if (h > 0) {
      const int card = oom.cards[h - 1];
      Eigen::MatrixXd next(oom.ranks[h], states.cols() * card);
      for (Eigen::Index c = 0; c < states.cols(); ++c) {
        for (int x = 0; x < card; ++x) {
          next.col(c * card + x) = oom.ops[h][x] * states.col(c);
        }
      }
      states = std::move(next);
    }
    std::vector<double> prefix = PrefixTable(do_table, model, h);
    Eigen::VectorXd predicted = states.transpose() * oom.v[h];
    for (Eigen::Index c = 0; c < predicted.size(); ++c) {
      check.probability_error =
          std::max(check.probability_error, std::abs(predicted(c) - prefix[c]));
    }
  }
  check.ok = check.max_operator_norm <= 1.0 + 1e-9 &&
             check.b0_norm <= check.b0_bound * (1.0 + 1e-12) &&
             check.max_v_ratio <= 1.0 + 1e-9 && check.recursion_error <= 1e-8 &&
             check.probability_error <= 1e-8;
  return check;
}

void WriteGpsrBinary(const GpsrModel& psr, std::ostream& out) {
  out.write("ISTPSR01", 8);
  const int H = psr.horizon();
  WriteU32(out, static_cast<std::uint32_t>(H));
  WriteU32(out, static_cast<std::uint32_t>(psr.m));
  for (int c : psr.cards) WriteU32(out, static_cast<std::uint32_t>(c));
  for (int d : psr.dims) WriteU32(out, static_cast<std::uint32_t>(d));
  WriteMatrix(out, psr.psi0.transpose());
  for (int h = 1; h < H; ++h) {
    for (const Eigen::MatrixXd& op : psr.ops[h]) WriteMatrix(out, op);
  }
  WriteMatrix(out, psr.final_weights);
}

}  // namespace istruct
