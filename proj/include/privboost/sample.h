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

#ifndef PRIVBOOST_SAMPLE_H_
#define PRIVBOOST_SAMPLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace privboost {

// Points may exceed the unit ball by at most this much.
inline constexpr double kUnitBallTolerance = 1e-9;

struct LabeledExample {
  std::vector<double> x;
  int y = 1;
};

// n >= 1 labeled points of a common dimension d, stored row-major.
class LabeledSample {
 public:
  explicit LabeledSample(const std::vector<LabeledExample>& examples);
  LabeledSample(std::size_t dim, std::vector<double> features,
                std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> features(std::size_t i) const {
    return {features_.data() + i * dim_, dim_};
  }
  int label(std::size_t i) const { return labels_[i]; }

  std::span<const double> all_features() const { return features_; }
  std::span<const int> labels() const { return labels_; }

  LabeledExample example(std::size_t i) const;

  // The neighboring sample that differs from this one only at index i.
  LabeledSample WithReplaced(std::size_t i, const LabeledExample& ex) const;
  // Same features, labels replaced.
  LabeledSample WithLabels(std::vector<int> labels) const;

  // FNV-1a over dimensions, features and labels.
  std::uint64_t Fingerprint() const;

  bool operator==(const LabeledSample&) const = default;

 private:
  void Validate() const;

  std::size_t dim_;
  std::vector<double> features_;
  std::vector<int> labels_;
};

// h(x) = z . x
class LinearHypothesis {
 public:
  explicit LinearHypothesis(std::vector<double> z);

  std::span<const double> z() const { return z_; }
  std::size_t dim() const { return z_.size(); }
  double Norm() const;

  // Raw inner product; throws kDimensionMismatch.
  double Evaluate(std::span<const double> x) const;

  bool operator==(const LinearHypothesis&) const = default;

 private:
  std::vector<double> z_;
};

inline double ClampUnit(double v) {
  return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v);
}

double Dot(std::span<const double> a, std::span<const double> b);

// (z . x_i) for every row of the sample.
std::vector<double> EvaluateAll(const LinearHypothesis& h,
                                const LabeledSample& sample);

}  // namespace privboost

#endif  // PRIVBOOST_SAMPLE_H_
