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

#include "privboost/measures.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "privboost/error.h"

namespace privboost {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Four interleaved accumulators: a fixed reduction order that still
// pipelines, since a single running sum is latency bound at large n.
double Sum(std::span<const double> v) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc[0] += v[i];
    acc[1] += v[i + 1];
    acc[2] += v[i + 2];
    acc[3] += v[i + 3];
  }
  for (; i < n; ++i) acc[i % 4] += v[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void CheckSameLength(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch,
                "lengths " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

BoundedMeasure::BoundedMeasure(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorCode::kInvalidMeasure, "measure must be non-empty");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::kInvalidMeasure, "weight " + std::to_string(i) +
                                                  " = " + std::to_string(w) +
                                                  " outside [0, 1]");
    }
  }
}

BoundedMeasure BoundedMeasure::Constant(std::size_t n, double value) {
  return BoundedMeasure(std::vector<double>(n, value));
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw Error(ErrorCode::kInvalidMeasure, "distribution must be non-empty");
  }
  // The sum is NaN or infinite exactly when some entry is; a negative entry
  // is caught by the minimum.
  const double total = Sum(probs_);
  if (!std::isfinite(total) ||
      !(*std::min_element(probs_.begin(), probs_.end()) >= 0.0)) {
    throw Error(ErrorCode::kInvalidMeasure, "negative or non-finite mass");
  }
  if (std::abs(total - 1.0) > kDistributionSumTolerance) {
    throw Error(ErrorCode::kInvalidMeasure, "probabilities do not sum to 1");
  }
}

DiscreteDistribution DiscreteDistribution::Uniform(std::size_t n) {
  return DiscreteDistribution(
      std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double DiscreteDistribution::MaxProbability() const {
  return *std::max_element(probs_.begin(), probs_.end());
}

DensityParam::DensityParam(double kappa) : kappa_(kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kBadParams,
                "kappa must lie in (0, 1], got " + std::to_string(kappa));
  }
}

double Density(const BoundedMeasure& m) {
  return AbsoluteSize(m) / static_cast<double>(m.size());
}

double AbsoluteSize(const BoundedMeasure& m) { return Sum(m.weights()); }

DiscreteDistribution InducedDistribution(const BoundedMeasure& m) {
  const double total = AbsoluteSize(m);
  if (total <= 0.0) {
    throw Error(ErrorCode::kZeroMeasure, "cannot normalize the zero measure");
  }
  std::vector<double> probs(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) probs[i] = m[i] / total;
  return DiscreteDistribution(std::move(probs));
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  CheckSameLength(p.size(), q.size());
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      kl += q[i];
    } else if (q[i] == 0.0) {
      return kInf;
    } else {
      kl += p[i] * std::log(p[i] / q[i]) + q[i] - p[i];
    }
  }
  // Rounding can leave a tiny negative value when p == q.
  return std::max(kl, 0.0);
}

double KlDivergence(const BoundedMeasure& p, const BoundedMeasure& q) {
  return KlDivergence(p.weights(), q.weights());
}

double StatisticalDistance(const DiscreteDistribution& p,
                           const DiscreteDistribution& q) {
  CheckSameLength(p.size(), q.size());
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) l1 += std::abs(p[i] - q[i]);
  return 0.5 * l1;
}

// Scale c with sum_i min(1, c w_i) = target_mass when some entries saturate.
static double SaturatingScale(std::span<const double> weights,
                              double target_mass) {
  const std::size_t n = weights.size();
  // At most floor(target_mass) entries can saturate; sorting one more gives
  // the largest unsaturated candidate for the feasibility test.
  const std::size_t head = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::floor(target_mass)) + 1);
  std::vector<double> sorted(weights.begin(), weights.end());
  std::nth_element(sorted.begin(), sorted.begin() + (head - 1), sorted.end(),
                   std::greater<>());
  const double tail_mass = Sum(std::span<const double>(sorted).subspan(head));
  std::sort(sorted.begin(), sorted.begin() + head, std::greater<>());

  // suffix[k] = mass of all entries except the k largest.
  std::vector<double> suffix(head + 1);
  suffix[head] = tail_mass;
  for (std::size_t k = head; k-- > 0;) suffix[k] = suffix[k + 1] + sorted[k];

  double scale = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < head; ++k) {
    const double rest = suffix[k];
    if (rest <= 0.0) break;
    const double c = (target_mass - static_cast<double>(k)) / rest;
    if (c * sorted[k] <= 1.0 + 1e-12) {
      scale = c;
      break;
    }
  }
  if (std::isnan(scale)) {
    // Every entry saturates; only possible when target_mass == n.
    if (head == n && sorted[n - 1] > 0.0 &&
        static_cast<double>(n) <= target_mass + kDensityTolerance) {
      scale = 1.0 / sorted[n - 1];
    } else {
      throw Error(ErrorCode::kInfeasibleProjection,
                  "fewer than kappa * n entries have positive weight");
    }
  }
  return scale;
}

CappedScaling SolveCappedScaling(std::span<const double> weights,
                                 double target_mass) {
  const std::size_t n = weights.size();
  const double total = Sum(weights);
  if (total > target_mass + kDensityTolerance * static_cast<double>(n)) {
    throw Error(ErrorCode::kTooDense,
                "mass " + std::to_string(total) +
                    " exceeds kappa * n = " + std::to_string(target_mass));
  }
  if (total >= target_mass) {
    return {std::vector<double>(weights.begin(), weights.end()), 1.0};
  }
  if (total <= 0.0) {
    throw Error(ErrorCode::kAllZero, "no scaling of the zero measure is dense");
  }

  // Common case: plain rescaling saturates nothing, so no sort is needed.
  // This is the k = 0 step of the search below.
  double scale = target_mass / total;
  if (scale * *std::max_element(weights.begin(), weights.end()) > 1.0 + 1e-12) {
    scale = SaturatingScale(weights, target_mass);
  }

  CappedScaling result{std::vector<double>(n), std::max(scale, 1.0)};
  for (std::size_t i = 0; i < n; ++i) {
    result.weights[i] = std::min(1.0, result.scale * weights[i]);
  }
  const double mass_error = std::abs(Sum(result.weights) - target_mass);
  if (mass_error > kDensityTolerance * static_cast<double>(n)) {
    throw Error(ErrorCode::kInfeasibleProjection,
                "capped scaling missed the target density by " +
                    std::to_string(mass_error / static_cast<double>(n)));
  }
  return result;
}

BoundedMeasure BregmanProjectDense(const BoundedMeasure& m,
                                   DensityParam kappa) {
  const double target = kappa.value() * static_cast<double>(m.size());
  CappedScaling scaled = SolveCappedScaling(m.weights(), target);
  return BoundedMeasure(std::move(scaled.weights));
}

BoundedMeasure BruteForceKlProjection(const BoundedMeasure& m,
                                      DensityParam kappa, double grid_step) {
  const std::size_t n = m.size();
  if (n > 4) {
    throw Error(
        ErrorCode::kTooLarge,
        "brute-force projection supports n <= 4, got " + std::to_string(n));
  }
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw Error(ErrorCode::kBadParams, "grid_step must lie in (0, 0.1]");
  }

  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double v = k * grid_step;
    if (v >= 1.0 - 1e-12) {
      grid.push_back(1.0);
      break;
    }
    grid.push_back(v);
  }
  const std::size_t g = grid.size();

  // cost[i][k]: KL contribution of coordinate i taking value grid[k].
  std::vector<std::vector<double>> cost(n, std::vector<double>(g));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < g; ++k) {
      const double p = grid[k];
      const double q = m[i];
      if (p == 0.0) {
        cost[i][k] = q;
      } else if (q == 0.0) {
        cost[i][k] = kInf;
      } else {
        cost[i][k] = p * std::log(p / q) + q - p;
      }
    }
  }

  const double target = kappa.value() * static_cast<double>(n) - 1e-12;
  std::vector<std::size_t> index(n, 0);
  std::vector<std::size_t> best(n, g - 1);
  double best_kl = kInf;
  while (true) {
    double mass = 0.0;
    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mass += grid[index[i]];
      kl += cost[i][index[i]];
    }
    if (mass >= target && kl < best_kl) {
      best_kl = kl;
      best = index;
    }
    std::size_t i = 0;
    while (i < n && ++index[i] == g) index[i++] = 0;
    if (i == n) break;
  }

  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = grid[best[i]];
  return BoundedMeasure(std::move(weights));
}

}  // namespace privboost
