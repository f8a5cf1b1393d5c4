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

#ifndef ISTRUCT_SPACE_H_
#define ISTRUCT_SPACE_H_

#include <cstdint>
#include <vector>

#include "istruct/common.h"

namespace istruct {

// Mixed-radix product space in lexicographic order: the first coordinate is
// the most significant digit. The empty product has exactly one element.
class ProductSpace {
 public:
  ProductSpace() = default;
  explicit ProductSpace(std::vector<int> cards) : cards_(std::move(cards)) {
    size_ = 1;
    for (int c : cards_) size_ = SafeMul(size_, c);
  }

  int rank() const { return static_cast<int>(cards_.size()); }
  std::int64_t size() const { return size_; }
  const std::vector<int>& cards() const { return cards_; }
  int card(int i) const { return cards_[i]; }

  std::int64_t Encode(const int* values) const {
    std::int64_t index = 0;
    for (int i = 0; i < rank(); ++i) index = index * cards_[i] + values[i];
    return index;
  }
  std::int64_t Encode(const std::vector<int>& values) const {
    return Encode(values.data());
  }

  void Decode(std::int64_t index, int* values) const {
    for (int i = rank() - 1; i >= 0; --i) {
      values[i] = static_cast<int>(index % cards_[i]);
      index /= cards_[i];
    }
  }
  std::vector<int> Decode(std::int64_t index) const {
    std::vector<int> values(cards_.size());
    Decode(index, values.data());
    return values;
  }

  // Advances values to the lexicographic successor. Returns false after the
  // last element, leaving values at all zeros.
  bool Next(std::vector<int>& values) const {
    for (int i = rank() - 1; i >= 0; --i) {
      if (++values[i] < cards_[i]) return true;
      values[i] = 0;
    }
    return false;
  }

 private:
  std::vector<int> cards_;
  std::int64_t size_ = 1;
};

}  // namespace istruct

#endif  // ISTRUCT_SPACE_H_
