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

// Bounded measures over a finite index set, divergences between them, and
// the KL (Bregman) projection onto the set of kappa-dense measures.

#ifndef PRIVBOOST_MEASURES_H_
#define PRIVBOOST_MEASURES_H_

#include <cstddef>
#include <span>
#include <vector>

namespace privboost {

// Absolute tolerance for density equalities.
inline constexpr double kDensityTolerance = 1e-9;
// Absolute tolerance on the sum of a distribution.
inline constexpr double kDistributionSumTolerance = 1e-9;

// A weight in [0, 1] for each of n >= 1 indices.
class BoundedMeasure {
 public:
  explicit BoundedMeasure(std::vector<double> weights);

  static BoundedMeasure Constant(std::size_t n, double value);

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  bool operator==(const BoundedMeasure&) const = default;

 private:
  std::vector<double> weights_;
};

// Non-negative probabilities summing to one.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs);

  static DiscreteDistribution Uniform(std::size_t n);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  double MaxProbability() const;

  bool operator==(const DiscreteDistribution&) const = default;

 private:
  std::vector<double> probs_;
};

// kappa in (0, 1].
class DensityParam {
 public:
  explicit DensityParam(double kappa);

  double value() const { return kappa_; }

 private:
  double kappa_;
};

// (sum_i w_i) / n.
double Density(const BoundedMeasure& m);

// sum_i w_i.
double AbsoluteSize(const BoundedMeasure& m);

// Throws kZeroMeasure when |m| = 0.
DiscreteDistribution InducedDistribution(const BoundedMeasure& m);

// Generalized (unnormalized) KL divergence with natural log:
//   sum_i p_i log(p_i / q_i) + q_i - p_i,
// with 0 log(0/q) = 0 and p log(p/0) = +inf for p > 0.
double KlDivergence(const BoundedMeasure& p, const BoundedMeasure& q);
double KlDivergence(std::span<const double> p, std::span<const double> q);

// Half the L1 distance, which on finite support is the max over events.
double StatisticalDistance(const DiscreteDistribution& p,
                           const DiscreteDistribution& q);

struct CappedScaling {
  std::vector<double> weights;
  // The multiplier c with weights[i] = min(1, c * input[i]).
  double scale = 1.0;
};

// Solves for the smallest c >= 1 with sum_i min(1, c * w_i) = target_mass
// using a sorted piecewise-linear sweep. At most floor(target_mass) entries
// can saturate, so only the floor(target_mass) + 1 largest are sorted.
//
// Returns the input unchanged (c = 1) when sum_i w_i >= target_mass.
// Throws kTooDense when sum_i w_i exceeds target_mass by more than
// n * kDensityTolerance, kAllZero when every weight is zero, and
// kInfeasibleProjection when fewer than target_mass weights are positive.
CappedScaling SolveCappedScaling(std::span<const double> weights,
                                 double target_mass);

// KL projection of m onto {mu : density(mu) >= kappa}. Requires
// |m| <= kappa * n; the result has density kappa.
BoundedMeasure BregmanProjectDense(const BoundedMeasure& m, DensityParam kappa);

// Exhaustive grid search over [0, 1]^n for the kappa-dense measure closest
// to m in KL. Test oracle only; n <= 4 and grid_step in (0, 0.1].
BoundedMeasure BruteForceKlProjection(const BoundedMeasure& m,
                                      DensityParam kappa, double grid_step);

}  // namespace privboost

#endif  // PRIVBOOST_MEASURES_H_
