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

#include "istruct/linalg.h"

namespace istruct {

Eigen::VectorXd SingularValues(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
}

double KthSingularValue(const Eigen::MatrixXd& m, int k) {
  Eigen::VectorXd s = SingularValues(m);
  if (k < 1 || k > s.size()) return 0.0;
  return s(k - 1);
}

double SpectralNorm(const Eigen::MatrixXd& m) {
  Eigen::VectorXd s = SingularValues(m);
  return s.size() == 0 ? 0.0 : s(0);
}

Eigen::MatrixXd PseudoInverse(const Eigen::MatrixXd& m, double rel_cutoff) {
  if (m.size() == 0) return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  double cutoff = rel_cutoff * s(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace istruct
