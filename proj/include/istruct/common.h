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

#ifndef ISTRUCT_COMMON_H_
#define ISTRUCT_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace istruct {

// Row-sum tolerance applied to kernels read from input.
inline constexpr double kLoadTolerance = 1e-12;
// Tolerance for sums that are derived numerically.
inline constexpr double kDerivedTolerance = 1e-9;
// Default limit on the number of entries an enumeration may touch.
inline constexpr std::int64_t kDefaultBudget = 10'000'000;
// Inclusive upper bound on an integer entry when multiplying cardinalities.
inline constexpr std::int64_t kSizeCap = std::int64_t{1} << 62;

class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& message, int variable_id = 0)
      : std::runtime_error(message), variable_id_(variable_id) {}
  // 1-based id of the offending variable, 0 when not tied to one.
  int variable_id() const { return variable_id_; }

 private:
  int variable_id_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::int64_t required,
                 std::int64_t budget)
      : std::runtime_error(what + ": requires " + std::to_string(required) +
                           " entries, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}
  std::int64_t required() const { return required_; }
  std::int64_t budget() const { return budget_; }

 private:
  std::int64_t required_;
  std::int64_t budget_;
};

// Raised when a predictive representation cannot be built from a model.
class ConstructionRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a request is outside the supported problem class.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Saturating product used for table sizes. Returns kSizeCap on overflow.
inline std::int64_t SafeMul(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSizeCap / b) return kSizeCap;
  return a * b;
}

inline void CheckBudget(const std::string& what, std::int64_t required,
                        std::int64_t budget) {
  if (required > budget) throw BudgetExceeded(what, required, budget);
}

}  // namespace istruct

#endif  // ISTRUCT_COMMON_H_
