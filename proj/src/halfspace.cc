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

#include "privboost/halfspace.h"

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "privboost/error.h"

namespace privboost {
namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void CheckOpenUnit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(
        ErrorCode::kBadParams,
        std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

}  // namespace

LinearHypothesis WeakLearnCenter(const LabeledSample& sample,
                                 const DiscreteDistribution& dist) {
  if (dist.size() != sample.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "distribution has " + std::to_string(dist.size()) +
                    " entries, sample has " + std::to_string(sample.size()));
  }
  const auto n = static_cast<Eigen::Index>(sample.size());
  const auto d = static_cast<Eigen::Index>(sample.dim());
  Eigen::VectorXd weights(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    weights[i] = dist[static_cast<std::size_t>(i)] *
                 static_cast<double>(sample.label(static_cast<std::size_t>(i)));
  }
  Eigen::Map<const RowMatrix> x(sample.all_features().data(), n, d);
  std::vector<double> z(static_cast<std::size_t>(d));
  Eigen::Map<Eigen::VectorXd>(z.data(), d).noalias() = x.transpose() * weights;
  return LinearHypothesis(std::move(z));
}

LinearHypothesis WeakLearnPrivate(const LabeledSample& sample,
                                  const DiscreteDistribution& dist,
                                  double sigma, Rng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kBadSigma,
                "sigma must be non-negative, got " + std::to_string(sigma));
  }
  LinearHypothesis center = WeakLearnCenter(sample, dist);
  if (sigma == 0.0) return center;
  std::vector<double> z(center.z().begin(), center.z().end());
  for (double& v : z) v += sigma * rng.Normal();
  return LinearHypothesis(std::move(z));
}

double Advantage(const LinearHypothesis& h, const LabeledSample& sample,
                 const DiscreteDistribution& dist) {
  if (dist.size() != sample.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "distribution length does not match the sample");
  }
  return ClampedAdvantage(EvaluateAll(h, sample), sample.labels(), dist);
}

CenteringWeakLearner::CenteringWeakLearner(double sigma) : sigma_(sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kBadSigma, "sigma must be non-negative");
  }
}

LinearHypothesis CenteringWeakLearner::Learn(const LabeledSample& sample,
                                             const DiscreteDistribution& dist,
                                             Rng& rng) {
  return WeakLearnPrivate(sample, dist, sigma_, rng);
}

void HsStlParams::Validate() const {
  CheckOpenUnit(alpha, "alpha");
  CheckOpenUnit(beta, "beta");
  CheckOpenUnit(tau, "tau");
  if (sigma_override && !(*sigma_override >= 0.0)) {
    throw Error(ErrorCode::kBadSigma, "sigma_override must be non-negative");
  }
  if (!(noise_constant > 0.0) || !std::isfinite(noise_constant)) {
    throw Error(ErrorCode::kBadParams, "noise constant must be positive");
  }
  if (rounds_override && *rounds_override < 1) {
    throw Error(ErrorCode::kBadParams, "rounds must be at least 1");
  }
}

HsStlPlan PlanHsStl(const HsStlParams& params, std::int64_t n) {
  params.Validate();
  if (n < 1) throw Error(ErrorCode::kBadParams, "n must be positive");
  HsStlPlan plan;
  plan.kappa = params.alpha / 4.0;
  plan.lambda = params.tau / 8.0;
  const double tau_sq = params.tau * params.tau;
  const double log_inv_kappa = std::log(1.0 / plan.kappa);
  plan.rounds = params.rounds_override.value_or(
      static_cast<std::int64_t>(std::ceil(1024.0 * log_inv_kappa / tau_sq)));

  if (params.sigma_override) {
    plan.sigma = *params.sigma_override;
  } else if (params.privacy_target) {
    plan.sigma =
        CalibrateSigma(*params.privacy_target, plan.rounds, plan.kappa, n);
  } else {
    const double inner =
        std::log(3072.0 * log_inv_kappa / (params.beta * tau_sq));
    plan.sigma = params.tau / (8.0 * params.noise_constant * std::sqrt(inner));
  }

  const double kn = plan.kappa * static_cast<double>(n);
  plan.per_round_rho =
      plan.sigma > 0.0
          ? WeakLearnerRho(plan.kappa, n, 1.0 / kn > 1.0 ? 1.0 : 1.0 / kn,
                           plan.sigma)
          : std::numeric_limits<double>::infinity();
  plan.min_sample_size = static_cast<std::int64_t>(std::ceil(
      96.0 * std::log(4.0 / params.beta) / (params.alpha * params.tau)));
  return plan;
}

HsStlResult HsStl(const LabeledSample& sample, const HsStlParams& params,
                  Rng& rng) {
  const auto n = static_cast<std::int64_t>(sample.size());
  HsStlResult result;
  result.plan = PlanHsStl(params, n);
  const HsStlPlan& plan = result.plan;

  if (n < plan.min_sample_size) {
    const std::string msg = "n = " + std::to_string(n) +
                            " is below the advisory minimum " +
                            std::to_string(plan.min_sample_size);
    if (params.strict_sample_size) {
      throw Error(ErrorCode::kSampleTooSmall, msg);
    }
    result.warnings.push_back(msg);
  }

  BoostConfig cfg{plan.kappa, plan.lambda, plan.rounds};
  LazyBregmanProducer producer(plan.kappa, plan.lambda);
  CenteringWeakLearner learner(plan.sigma);
  BoostOptions options;
  options.record_trace = params.record_trace;
  result.boost = Boost(sample, cfg, producer, learner, rng, options);

  for (std::int64_t t = 0; t < plan.rounds; ++t) {
    result.ledger.Append(plan.per_round_rho, "round " + std::to_string(t));
  }
  result.hypothesis = result.boost.aggregate;
  return result;
}

int Classify(const LinearHypothesis& h, std::span<const double> x) {
  return h.Evaluate(x) >= 0.0 ? 1 : -1;
}

double EmpiricalError(const LinearHypothesis& h, const LabeledSample& sample) {
  const std::vector<double> values = EvaluateAll(h, sample);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int predicted = values[i] >= 0.0 ? 1 : -1;
    if (predicted != sample.label(i)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(values.size());
}

}  // namespace privboost
