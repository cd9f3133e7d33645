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

// The centering weak learner z = sum_j D_j y_j x_j, its Gaussian-noise
// privatization, and the end-to-end private strong halfspace learner.

#ifndef PRIVBOOST_HALFSPACE_H_
#define PRIVBOOST_HALFSPACE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "privboost/boosting.h"
#include "privboost/measures.h"
#include "privboost/privacy.h"
#include "privboost/rng.h"
#include "privboost/sample.h"

namespace privboost {

LinearHypothesis WeakLearnCenter(const LabeledSample& sample,
                                 const DiscreteDistribution& dist);

// Center plus N(0, sigma^2 I). At sigma = 0 no randomness is consumed and the
// result equals WeakLearnCenter exactly.
LinearHypothesis WeakLearnPrivate(const LabeledSample& sample,
                                  const DiscreteDistribution& dist,
                                  double sigma, Rng& rng);

// 1/2 sum_j D_j y_j clamp(h(x_j)).
double Advantage(const LinearHypothesis& h, const LabeledSample& sample,
                 const DiscreteDistribution& dist);

class CenteringWeakLearner : public WeakLearner {
 public:
  explicit CenteringWeakLearner(double sigma = 0.0);

  LinearHypothesis Learn(const LabeledSample& sample,
                         const DiscreteDistribution& dist, Rng& rng) override;

  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

struct HsStlParams {
  double alpha = 0.2;
  double beta = 0.1;
  double tau = 0.3;
  // Takes precedence over privacy_target. Zero means no noise (and no
  // privacy).
  std::optional<double> sigma_override;
  // Calibrates sigma for this (epsilon, delta) instead of the default formula.
  std::optional<ApproxDpParams> privacy_target;
  // The unspecified constant in the default sigma formula.
  double noise_constant = 1.0;
  // Replaces the round count; for experiments and tests.
  std::optional<std::int64_t> rounds_override;
  // Throw kSampleTooSmall instead of warning.
  bool strict_sample_size = false;
  // Keep per-round diagnostics in the boost output.
  bool record_trace = true;

  // Throws kBadParams.
  void Validate() const;
};

struct HsStlPlan {
  double kappa = 0.0;
  double lambda = 0.0;
  std::int64_t rounds = 0;
  double sigma = 0.0;
  // +inf when sigma = 0.
  double per_round_rho = 0.0;
  // Advisory minimum n from the label-noise Chernoff requirement.
  std::int64_t min_sample_size = 0;
};

// kappa = alpha/4, lambda = tau/8, T = ceil(1024 ln(1/kappa) / tau^2),
// sigma = tau / (8 c sqrt(ln(3072 ln(1/kappa) / (beta tau^2)))).
HsStlPlan PlanHsStl(const HsStlParams& params, std::int64_t n);

struct HsStlResult {
  LinearHypothesis hypothesis{std::vector<double>{}};
  ZcdpLedger ledger;
  BoostOutput boost;
  HsStlPlan plan;
  std::vector<std::string> warnings;
};

HsStlResult HsStl(const LabeledSample& sample, const HsStlParams& params,
                  Rng& rng);

// sign(z . x) with sign(0) = +1.
int Classify(const LinearHypothesis& h, std::span<const double> x);

double EmpiricalError(const LinearHypothesis& h, const LabeledSample& sample);

}  // namespace privboost

#endif  // PRIVBOOST_HALFSPACE_H_
