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

#ifndef ISTRUCT_CSV_H_
#define ISTRUCT_CSV_H_

#include <string>
#include <vector>

namespace istruct {

// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string CsvField(const std::string& value);

// 17 significant digits, so values round-trip exactly. NaN prints empty.
std::string FormatDouble(double value);
std::string FormatBool(bool value);

// Ids joined by spaces, e.g. "1 4 7".
std::string JoinInts(const std::vector<int>& values);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Throws std::invalid_argument when the width differs from the header.
  void AddRow(std::vector<std::string> cells);
  std::size_t num_rows() const { return rows_.size(); }
  // Header and rows, each terminated by CRLF.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace istruct

#endif  // ISTRUCT_CSV_H_
