//
// Copyright 2026 The privboost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PRIVBOOST_RNG_H_
#define PRIVBOOST_RNG_H_

#include <cstdint>
#include <limits>
#include <string_view>

namespace privboost {

// Counter-based SplitMix64 stream. The i-th output of a stream is a pure
// function of (key, i), so streams can be split by label and index without
// sharing state: Derive("rcn", i) always yields the same stream for the same
// parent key, no matter how many draws the parent has made.
//
// Satisfies std::uniform_random_bit_generator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  // Independent child stream keyed by (this key, label, index).
  Rng Derive(std::string_view label, std::uint64_t index = 0) const;

  std::uint64_t NextU64();
  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  double Uniform(double lo, double hi);
  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double Normal();
  // +1 or -1 with equal probability.
  int Sign();

  std::uint64_t key() const { return key_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t z);

}  // namespace privboost

#endif  // PRIVBOOST_RNG_H_
