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

#ifndef ISTRUCT_CLI_H_
#define ISTRUCT_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace istruct {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBudget = 2;

// Enumeration budget: the flag if given, else ISTRUCT_BUDGET, else the
// default. Throws ValidationError on a malformed environment value.
std::int64_t ResolveBudget(std::optional<std::int64_t> flag);

// Command line driver. Outputs without --out go to `out`; diagnostics go to
// `err`. Returns the process exit status.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace istruct

#endif  // ISTRUCT_CLI_H_
