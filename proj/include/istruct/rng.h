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

#ifndef ISTRUCT_RNG_H_
#define ISTRUCT_RNG_H_

#include <cstdint>
#include <vector>

namespace istruct {

// Counter-based splittable generator. Output i of a stream with key k is
// SplitMix64Mix(k + (i + 1) * golden), so streams are reproducible from the
// key alone and independent of the platform's standard library.
class SplitMixRng {
 public:
  explicit SplitMixRng(std::uint64_t seed) : key_(Mix(seed ^ kSeedSalt)) {}

  std::uint64_t NextU64() {
    ++counter_;
    return Mix(key_ + counter_ * kGolden);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  int UniformInt(int n) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(NextU64()) * static_cast<std::uint64_t>(n);
    return static_cast<int>(product >> 64);
  }

  // Index drawn from a probability vector. Falls back to the last index with
  // positive mass when rounding leaves the cumulative sum short.
  int Categorical(const double* probs, int n) {
    double u = Uniform();
    double cumulative = 0.0;
    int last_positive = 0;
    for (int i = 0; i < n; ++i) {
      if (probs[i] > 0.0) last_positive = i;
      cumulative += probs[i];
      if (u < cumulative) return i;
    }
    return last_positive;
  }
  int Categorical(const std::vector<double>& probs) {
    return Categorical(probs.data(), static_cast<int>(probs.size()));
  }

  // Independent child stream. Does not advance this stream.
  SplitMixRng Split(std::uint64_t stream) const {
    SplitMixRng child(0);
    child.key_ = Mix(key_ ^ Mix(stream + kSplitSalt));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t key() const { return key_; }

  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x243f6a8885a308d3ULL;
  static constexpr std::uint64_t kSplitSalt = 0x13198a2e03707344ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace istruct

#endif  // ISTRUCT_RNG_H_
