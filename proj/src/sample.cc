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

#include "privboost/sample.h"

#include <Eigen/Core>
#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "privboost/error.h"

namespace privboost {
namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::uint64_t FnvBytes(std::uint64_t h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

LabeledSample::LabeledSample(const std::vector<LabeledExample>& examples)
    : dim_(examples.empty() ? 0 : examples.front().x.size()) {
  features_.reserve(examples.size() * dim_);
  labels_.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].x.size() != dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "example " + std::to_string(i) + " has dimension " +
                      std::to_string(examples[i].x.size()) + ", expected " +
                      std::to_string(dim_));
    }
    features_.insert(features_.end(), examples[i].x.begin(),
                     examples[i].x.end());
    labels_.push_back(examples[i].y);
  }
  Validate();
}

LabeledSample::LabeledSample(std::size_t dim, std::vector<double> features,
                             std::vector<int> labels)
    : dim_(dim), features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.size() != dim_ * labels_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature buffer does not match n * d");
  }
  Validate();
}

void LabeledSample::Validate() const {
  if (labels_.empty()) {
    throw Error(ErrorCode::kBadConfig, "sample must contain an example");
  }
  if (dim_ == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "dimension must be positive");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1) {
      throw Error(ErrorCode::kBadConfig,
                  "label " + std::to_string(i) + " is not +1 or -1");
    }
    const auto x = features(i);
    double norm_sq = 0.0;
    for (double v : x) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kBadConfig,
                    "example " + std::to_string(i) + " is not finite");
      }
      norm_sq += v * v;
    }
    if (std::sqrt(norm_sq) > 1.0 + kUnitBallTolerance) {
      throw Error(ErrorCode::kNormViolation, "example " + std::to_string(i) +
                                                 " lies outside the unit ball");
    }
  }
}

LabeledExample LabeledSample::example(std::size_t i) const {
  const auto x = features(i);
  return {std::vector<double>(x.begin(), x.end()), labels_[i]};
}

LabeledSample LabeledSample::WithReplaced(std::size_t i,
                                          const LabeledExample& ex) const {
  if (ex.x.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "replacement dimension");
  }
  std::vector<double> features = features_;
  std::vector<int> labels = labels_;
  std::copy(ex.x.begin(), ex.x.end(), features.begin() + i * dim_);
  labels[i] = ex.y;
  return LabeledSample(dim_, std::move(features), std::move(labels));
}

LabeledSample LabeledSample::WithLabels(std::vector<int> labels) const {
  return LabeledSample(dim_, features_, std::move(labels));
}

std::uint64_t LabeledSample::Fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = FnvBytes(h, &dim_, sizeof(dim_));
  h = FnvBytes(h, features_.data(), features_.size() * sizeof(double));
  h = FnvBytes(h, labels_.data(), labels_.size() * sizeof(int));
  return h;
}

LinearHypothesis::LinearHypothesis(std::vector<double> z) : z_(std::move(z)) {
  for (double v : z_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kBadParams, "hypothesis has a non-finite entry");
    }
  }
}

double LinearHypothesis::Norm() const { return std::sqrt(Dot(z_, z_)); }

double LinearHypothesis::Evaluate(std::span<const double> x) const {
  if (x.size() != z_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "hypothesis has dimension " + std::to_string(z_.size()) +
                    ", point has " + std::to_string(x.size()));
  }
  return Dot(z_, x);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> EvaluateAll(const LinearHypothesis& h,
                                const LabeledSample& sample) {
  if (h.dim() != sample.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "hypothesis and sample dimensions differ");
  }
  std::vector<double> out(sample.size());
  Eigen::Map<const RowMatrix> x(sample.all_features().data(),
                                static_cast<Eigen::Index>(sample.size()),
                                static_cast<Eigen::Index>(sample.dim()));
  Eigen::Map<const Eigen::VectorXd> z(h.z().data(),
                                      static_cast<Eigen::Index>(h.dim()));
  Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()))
      .noalias() = x * z;
  return out;
}

}  // namespace privboost
