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

// The stateless boosting schema: every round asks a measure producer for a
// re-weighting of the sample given only (sample, hypotheses so far), then asks
// a weak learner for a hypothesis under the induced distribution. The
// concrete producer here is the lazy-Bregman rule: multiplicative weights on
// the cumulative soft-punishment loss, followed by a single KL projection onto
// the kappa-dense measures.

#ifndef PRIVBOOST_BOOSTING_H_
#define PRIVBOOST_BOOSTING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "privboost/measures.h"
#include "privboost/rng.h"
#include "privboost/sample.h"

namespace privboost {

// Unprojected weights below this are raised to it before projection.
inline constexpr double kWeightFloor = 1e-300;
// Slack on the 1/(kappa n) smoothness bound.
inline constexpr double kSmoothnessTolerance = 1e-12;

struct MeasureAndDistribution {
  BoundedMeasure measure;
  DiscreteDistribution distribution;
};

// 1 - |clamp(h) - y| / 2, always in [0, 1].
inline double SoftPunishment(double h_value, int y) {
  const double c = ClampUnit(h_value);
  const double diff = c - static_cast<double>(y);
  return 1.0 - 0.5 * (diff < 0.0 ? -diff : diff);
}

std::vector<double> SoftPunishmentLosses(const LinearHypothesis& h,
                                         const LabeledSample& sample);

// 1/2 sum_i p_i y_i clamp(v_i).
double ClampedAdvantage(std::span<const double> values,
                        std::span<const int> labels,
                        const DiscreteDistribution& dist);

// mu~(i) = kappa exp(-lambda L_i) projected onto the kappa-dense measures.
// The projection is invariant to a common rescaling of mu~, so the exponent
// is shifted by min_i L_i before exponentiating; entries are floored at
// kWeightFloor. This is the single code path behind LbNxm and the games
// module's lazy dense update.
MeasureAndDistribution DenseMeasureFromCumulativeLoss(
    std::span<const double> cumulative_loss, double kappa, double lambda);

// Lazy-Bregman next measure, recomputed from scratch.
MeasureAndDistribution LbNxm(const LabeledSample& sample,
                             std::span<const LinearHypothesis> hypotheses,
                             double kappa, double lambda);

class MeasureProducer {
 public:
  virtual ~MeasureProducer() = default;

  // Must be a deterministic function of its arguments.
  virtual MeasureAndDistribution Produce(
      const LabeledSample& sample,
      std::span<const LinearHypothesis> hypotheses) = 0;
};

class WeakLearner {
 public:
  virtual ~WeakLearner() = default;

  virtual LinearHypothesis Learn(const LabeledSample& sample,
                                 const DiscreteDistribution& dist,
                                 Rng& rng) = 0;
};

// LbNxm with an optional cache of the cumulative loss. The cache is keyed by
// the sample's identity and the length of the hypothesis list and assumes
// append-only growth; anything else falls back to a full recomputation.
class LazyBregmanProducer : public MeasureProducer {
 public:
  LazyBregmanProducer(double kappa, double lambda, bool use_cache = true);

  MeasureAndDistribution Produce(
      const LabeledSample& sample,
      std::span<const LinearHypothesis> hypotheses) override;

  double kappa() const { return kappa_; }
  double lambda() const { return lambda_; }

 private:
  double kappa_;
  double lambda_;
  bool use_cache_;

  const LabeledSample* cached_sample_ = nullptr;
  std::size_t cached_count_ = 0;
  std::optional<LinearHypothesis> cached_last_;
  std::vector<double> cumulative_;
};

struct BoostConfig {
  double kappa = 0.05;
  double lambda = 0.1;
  std::int64_t rounds = 1;

  // Throws kBadConfig unless 0 < kappa < 1, 0 < lambda < 1 and rounds >= 1.
  void Validate() const;
};

struct RoundDiagnostics {
  double density = 0.0;
  double max_probability = 0.0;
  // Clamped advantage of the round's hypothesis under its own distribution.
  double advantage = 0.0;
};

struct BoostOptions {
  // Per-round diagnostics and the training-set aggregate cache cost one extra
  // pass over the sample per round.
  bool record_trace = true;
};

struct BoostOutput {
  std::vector<LinearHypothesis> hypotheses;
  // Unclamped mean of the weak hypotheses' z vectors.
  LinearHypothesis aggregate{std::vector<double>{}};
  std::vector<RoundDiagnostics> trace;

  // sum_t clamp(h_t(x_i)) on the training sample, present when traced.
  std::vector<double> training_clamped_sum;
  std::uint64_t training_fingerprint = 0;

  std::size_t rounds() const { return hypotheses.size(); }
};

BoostOutput Boost(const LabeledSample& sample, const BoostConfig& cfg,
                  MeasureProducer& producer, WeakLearner& learner, Rng& rng,
                  const BoostOptions& options = {});

// H(x_i) = (1/T) sum_t clamp(h_t(x_i)) for every example.
std::vector<double> ClampedAggregateValues(
    std::span<const LinearHypothesis> hypotheses, const LabeledSample& sample);

// Fraction of examples with y_i H(x_i) <= gamma, H the clamped aggregate.
double MarginFailureFraction(const BoostOutput& output,
                             const LabeledSample& sample, double gamma);

}  // namespace privboost

#endif  // PRIVBOOST_BOOSTING_H_
