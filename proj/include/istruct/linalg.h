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

#ifndef ISTRUCT_LINALG_H_
#define ISTRUCT_LINALG_H_

#include <Eigen/Dense>

namespace istruct {

// Singular values in decreasing order.
Eigen::VectorXd SingularValues(const Eigen::MatrixXd& m);

// k-th largest singular value (1-based); 0 when k exceeds min(rows, cols).
double KthSingularValue(const Eigen::MatrixXd& m, int k);

double SpectralNorm(const Eigen::MatrixXd& m);

// Moore-Penrose pseudo-inverse dropping singular values at or below
// rel_cutoff * sigma_max.
Eigen::MatrixXd PseudoInverse(const Eigen::MatrixXd& m,
                              double rel_cutoff = 1e-10);

}  // namespace istruct

#endif  // ISTRUCT_LINALG_H_
