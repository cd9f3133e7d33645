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

#include "privboost/boosting.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <utility>

#include "privboost/error.h"

namespace privboost {
namespace {

void CheckRates(double kappa, double lambda) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kBadParams,
                "kappa must lie in (0, 1], got " + std::to_string(kappa));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kBadParams,
                "lambda must be positive, got " + std::to_string(lambda));
  }
}

void AddLosses(const LinearHypothesis& h, const LabeledSample& sample,
               std::vector<double>& cumulative) {
  const std::vector<double> values = EvaluateAll(h, sample);
  for (std::size_t i = 0; i < values.size(); ++i) {
    cumulative[i] += SoftPunishment(values[i], sample.label(i));
  }
}

}  // namespace

std::vector<double> SoftPunishmentLosses(const LinearHypothesis& h,
                                         const LabeledSample& sample) {
  std::vector<double> losses = EvaluateAll(h, sample);
  for (std::size_t i = 0; i < losses.size(); ++i) {
    losses[i] = SoftPunishment(losses[i], sample.label(i));
  }
  return losses;
}

double ClampedAdvantage(std::span<const double> values,
                        std::span<const int> labels,
                        const DiscreteDistribution& dist) {
  if (values.size() != dist.size() || labels.size() != dist.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "distribution length does not match the sample");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += dist[i] * static_cast<double>(labels[i]) * ClampUnit(values[i]);
  }
  return 0.5 * sum;
}

MeasureAndDistribution DenseMeasureFromCumulativeLoss(
    std::span<const double> cumulative_loss, double kappa, double lambda) {
  CheckRates(kappa, lambda);
  const std::size_t n = cumulative_loss.size();
  if (n == 0) {
    throw Error(ErrorCode::kBadParams, "empty loss vector");
  }
  const double min_loss =
      *std::min_element(cumulative_loss.begin(), cumulative_loss.end());
  std::vector<double> unprojected(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w =
        kappa * std::exp(-lambda * (cumulative_loss[i] - min_loss));
    unprojected[i] = std::max(w, kWeightFloor);
  }
  CappedScaling projected =
      SolveCappedScaling(unprojected, kappa * static_cast<double>(n));
  BoundedMeasure measure(std::move(projected.weights));
  DiscreteDistribution distribution = InducedDistribution(measure);
  return {std::move(measure), std::move(distribution)};
}

MeasureAndDistribution LbNxm(const LabeledSample& sample,
                             std::span<const LinearHypothesis> hypotheses,
                             double kappa, double lambda) {
  std::vector<double> cumulative(sample.size(), 0.0);
  for (const LinearHypothesis& h : hypotheses) AddLosses(h, sample, cumulative);
  return DenseMeasureFromCumulativeLoss(cumulative, kappa, lambda);
}

LazyBregmanProducer::LazyBregmanProducer(double kappa, double lambda,
                                         bool use_cache)
    : kappa_(kappa), lambda_(lambda), use_cache_(use_cache) {
  CheckRates(kappa, lambda);
}

MeasureAndDistribution LazyBregmanProducer::Produce(
    const LabeledSample& sample, std::span<const LinearHypothesis> hypotheses) {
  if (!use_cache_) return LbNxm(sample, hypotheses, kappa_, lambda_);

  const bool reusable =
      cached_sample_ == &sample && cumulative_.size() == sample.size() &&
      cached_count_ <= hypotheses.size() &&
      (cached_count_ == 0 || hypotheses[cached_count_ - 1] == *cached_last_);
  if (!reusable) {
    cached_sample_ = &sample;
    cached_count_ = 0;
    cached_last_.reset();
    cumulative_.assign(sample.size(), 0.0);
  }
  for (std::size_t j = cached_count_; j < hypotheses.size(); ++j) {
    AddLosses(hypotheses[j], sample, cumulative_);
  }
  cached_count_ = hypotheses.size();
  if (cached_count_ > 0) cached_last_ = hypotheses.back();
  return DenseMeasureFromCumulativeLoss(cumulative_, kappa_, lambda_);
}

void BoostConfig::Validate() const {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "kappa must lie in (0, 1)");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "lambda must lie in (0, 1)");
  }
  if (rounds < 1) {
    throw Error(ErrorCode::kBadConfig, "rounds must be at least 1");
  }
}

BoostOutput Boost(const LabeledSample& sample, const BoostConfig& cfg,
                  MeasureProducer& producer, WeakLearner& learner, Rng& rng,
                  const BoostOptions& options) {
  cfg.Validate();
  const std::size_t n = sample.size();
  const std::size_t d = sample.dim();
  const double smooth_bound =
      1.0 / (cfg.kappa * static_cast<double>(n)) + kSmoothnessTolerance;

  BoostOutput out;
  out.hypotheses.reserve(static_cast<std::size_t>(cfg.rounds));
  if (options.record_trace) {
    out.trace.reserve(static_cast<std::size_t>(cfg.rounds));
    out.training_clamped_sum.assign(n, 0.0);
    out.training_fingerprint = sample.Fingerprint();
  }
  std::vector<double> z_sum(d, 0.0);

  for (std::int64_t t = 0; t < cfg.rounds; ++t) {
    MeasureAndDistribution md = producer.Produce(sample, out.hypotheses);
    const double max_p = md.distribution.MaxProbability();
    if (max_p > smooth_bound) {
      throw Error(ErrorCode::kSmoothnessViolation,
                  "round " + std::to_string(t) + ": max probability " +
                      std::to_string(max_p) + " exceeds 1/(kappa n)");
    }

    std::optional<LinearHypothesis> h;
    try {
      h.emplace(learner.Learn(sample, md.distribution, rng));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kWeakLearnerFailure,
                  "round " + std::to_string(t) + ": " + e.what());
    }
    if (h->dim() != d) {
      throw Error(ErrorCode::kWeakLearnerFailure,
                  "round " + std::to_string(t) +
                      ": hypothesis dimension does not match the sample");
    }

    if (options.record_trace) {
      const std::vector<double> values = EvaluateAll(*h, sample);
      for (std::size_t i = 0; i < n; ++i) {
        out.training_clamped_sum[i] += ClampUnit(values[i]);
      }
      out.trace.push_back(
          {Density(md.measure), max_p,
           ClampedAdvantage(values, sample.labels(), md.distribution)});
    }
    for (std::size_t k = 0; k < d; ++k) z_sum[k] += h->z()[k];
    out.hypotheses.push_back(std::move(*h));
  }

  const double inv_t = 1.0 / static_cast<double>(cfg.rounds);
  for (double& v : z_sum) v *= inv_t;
  out.aggregate = LinearHypothesis(std::move(z_sum));
  return out;
}

std::vector<double> ClampedAggregateValues(
    std::span<const LinearHypothesis> hypotheses, const LabeledSample& sample) {
  if (hypotheses.empty()) {
    throw Error(ErrorCode::kBadParams, "no hypotheses to aggregate");
  }
  std::vector<double> sum(sample.size(), 0.0);
  for (const LinearHypothesis& h : hypotheses) {
    const std::vector<double> values = EvaluateAll(h, sample);
    for (std::size_t i = 0; i < values.size(); ++i) {
      sum[i] += ClampUnit(values[i]);
    }
  }
  const double t = static_cast<double>(hypotheses.size());
  for (double& v : sum) v /= t;
  return sum;
}

double MarginFailureFraction(const BoostOutput& output,
                             const LabeledSample& sample, double gamma) {
  if (!(gamma >= 0.0)) {
    throw Error(ErrorCode::kBadParams, "gamma must be non-negative");
  }
  std::vector<double> aggregate;
  if (!output.training_clamped_sum.empty() &&
      output.training_clamped_sum.size() == sample.size() &&
      output.training_fingerprint == sample.Fingerprint()) {
    const double t = static_cast<double>(output.rounds());
    aggregate = output.training_clamped_sum;
    for (double& v : aggregate) v /= t;
  } else {
    aggregate = ClampedAggregateValues(output.hypotheses, sample);
  }
  std::size_t failures = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (static_cast<double>(sample.label(i)) * aggregate[i] <= gamma) {
      ++failures;
    }
  }
  return static_cast<double>(failures) / static_cast<double>(sample.size());
}

}  // namespace privboost
