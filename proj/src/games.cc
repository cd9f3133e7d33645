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

#include "privboost/games.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "privboost/error.h"

namespace privboost {
namespace {

void CheckLosses(std::span<const double> losses, std::size_t n,
                 std::size_t round) {
  if (losses.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "round " + std::to_string(round) + " has " +
                    std::to_string(losses.size()) + " losses, expected " +
                    std::to_string(n));
  }
  for (double v : losses) {
    if (!(v >= -kLossTolerance && v <= 1.0 + kLossTolerance)) {
      throw Error(ErrorCode::kBadLoss, "round " + std::to_string(round) +
                                           ": loss " + std::to_string(v) +
                                           " outside [0, 1]");
    }
  }
}

void CheckMatrix(const LossMatrix& m, const DiscreteDistribution& p,
                 const DiscreteDistribution& q) {
  if (m.entries.size() != m.rows * m.cols || p.size() != m.rows ||
      q.size() != m.cols) {
    throw Error(ErrorCode::kLengthMismatch,
                "matrix shape does not match the strategies");
  }
}

}  // namespace

double ExpectedLoss(std::span<const double> losses,
                    const DiscreteDistribution& dist) {
  if (losses.size() != dist.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "loss vector and distribution lengths differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < losses.size(); ++i) sum += dist[i] * losses[i];
  return sum;
}

double BilinearLoss(const LossMatrix& m, const DiscreteDistribution& p,
                    const DiscreteDistribution& q) {
  CheckMatrix(m, p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) sum += p[i] * m.at(i, j) * q[j];
  }
  return sum;
}

double BilinearLossByColumns(const LossMatrix& m, const DiscreteDistribution& p,
                             const DiscreteDistribution& q) {
  CheckMatrix(m, p, q);
  double sum = 0.0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    double column = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) column += p[i] * m.at(i, j);
    sum += column * q[j];
  }
  return sum;
}

double BilinearLossByRows(const LossMatrix& m, const DiscreteDistribution& p,
                          const DiscreteDistribution& q) {
  CheckMatrix(m, p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) row += m.at(i, j) * q[j];
    sum += p[i] * row;
  }
  return sum;
}

double SoftPunishmentGame::Entry(std::size_t i,
                                 const LinearHypothesis& h) const {
  return SoftPunishment(h.Evaluate(sample_.features(i)), sample_.label(i));
}

std::vector<double> SoftPunishmentGame::Column(
    const LinearHypothesis& h) const {
  return SoftPunishmentLosses(h, sample_);
}

double SoftPunishmentGame::Value(const DiscreteDistribution& p,
                                 const LinearHypothesis& h) const {
  return ExpectedLoss(Column(h), p);
}

std::size_t DenseSetSize(double kappa, std::size_t n) {
  if (!(kappa > 0.0 && kappa <= 1.0) || n == 0) {
    throw Error(ErrorCode::kBadParams, "need kappa in (0, 1] and n >= 1");
  }
  const double kn = kappa * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(kn - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

BoundedMeasure LazyDenseUpdate(std::span<const std::vector<double>> history,
                               std::size_t n, double kappa, double lambda) {
  if (n == 0) throw Error(ErrorCode::kBadParams, "n must be positive");
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t t = 0; t < history.size(); ++t) {
    CheckLosses(history[t], n, t);
    for (std::size_t i = 0; i < n; ++i) cumulative[i] += history[t][i];
  }
  return DenseMeasureFromCumulativeLoss(cumulative, kappa, lambda).measure;
}

PythiaResult PythiaFromMargins(std::span<const double> margins, double kappa) {
  const std::size_t n = margins.size();
  const std::size_t need = DenseSetSize(kappa, n);

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    (margins[i] < 0.0 ? chosen : rest).push_back(i);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return margins[a] < margins[b];
  });
  double theta = 0.0;
  for (std::size_t k = 0; chosen.size() < need && k < rest.size(); ++k) {
    chosen.push_back(rest[k]);
    theta = margins[rest[k]];
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<double> probs(n, 0.0);
  const double w = 1.0 / static_cast<double>(chosen.size());
  for (std::size_t i : chosen) probs[i] = w;
  return {DiscreteDistribution(std::move(probs)), std::move(chosen), theta};
}

PythiaResult Pythia(const LabeledSample& sample,
                    std::span<const double> h_values, double kappa) {
  if (h_values.size() != sample.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "one aggregate value per example is required");
  }
  std::vector<double> margins(sample.size());
  for (std::size_t i = 0; i < margins.size(); ++i) {
    margins[i] = static_cast<double>(sample.label(i)) * h_values[i];
  }
  return PythiaFromMargins(margins, kappa);
}

std::vector<double> FixedLossColumns::Play(std::size_t round,
                                           const DiscreteDistribution&, Rng&) {
  if (round >= losses_.size()) {
    throw Error(ErrorCode::kBadParams, "ran out of fixed loss vectors");
  }
  return losses_[round];
}

std::vector<double> WeakLearnerColumns::Play(std::size_t,
                                             const DiscreteDistribution& row,
                                             Rng& rng) {
  hypotheses_.push_back(learner_.Learn(sample_, row, rng));
  return SoftPunishmentLosses(hypotheses_.back(), sample_);
}

PlayTrace IteratedPlay(std::size_t n, ColumnPlayer& columns, double kappa,
                       double lambda, std::int64_t rounds, Rng& rng) {
  if (rounds < 1) throw Error(ErrorCode::kBadParams, "need at least one round");
  if (n == 0) throw Error(ErrorCode::kBadParams, "n must be positive");
  PlayTrace trace;
  trace.rounds.reserve(static_cast<std::size_t>(rounds));
  // Same accumulation order as LazyDenseUpdate over the revealed history.
  std::vector<double> cumulative(n, 0.0);
  for (std::int64_t t = 0; t < rounds; ++t) {
    MeasureAndDistribution md =
        DenseMeasureFromCumulativeLoss(cumulative, kappa, lambda);
    std::vector<double> losses =
        columns.Play(static_cast<std::size_t>(t), md.distribution, rng);
    CheckLosses(losses, n, static_cast<std::size_t>(t));
    const double expected = ExpectedLoss(losses, md.distribution);
    for (std::size_t i = 0; i < n; ++i) cumulative[i] += losses[i];
    trace.rounds.push_back({std::move(md.measure), std::move(md.distribution),
                            std::move(losses), expected});
  }
  return trace;
}

BoundedMeasure BestFixedDenseMeasure(std::span<const double> cumulative_losses,
                                     double kappa) {
  const std::size_t n = cumulative_losses.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return cumulative_losses[a] < cumulative_losses[b];
                   });
  // Fill the cheapest indices up to mass exactly kappa n; a fractional kappa n
  // leaves one partial weight on the boundary index.
  std::vector<double> weights(n, 0.0);
  double remaining = kappa * static_cast<double>(n);
  for (std::size_t r = 0; r < n && remaining > kDensityTolerance; ++r) {
    const double w = std::min(1.0, remaining);
    weights[order[r]] = w;
    remaining -= w;
  }
  return BoundedMeasure(std::move(weights));
}

BoundedMeasure RandomDenseMeasure(std::size_t n, double kappa, Rng& rng) {
  const std::size_t k_min = DenseSetSize(kappa, n);
  std::vector<double> weights(n, 0.0);
  if (rng.Uniform01() < 0.5) {
    const std::size_t k =
        k_min + static_cast<std::size_t>(rng.Uniform01() *
                                         static_cast<double>(n - k_min + 1));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t r = 0; r < std::min(k, n); ++r) weights[order[r]] = 1.0;
    return BoundedMeasure(std::move(weights));
  }
  for (double& w : weights) w = rng.Uniform01();
  BoundedMeasure m(std::move(weights));
  if (Density(m) >= kappa) return m;
  return BregmanProjectDense(m, DensityParam(kappa));
}

std::vector<double> CumulativeLosses(const PlayTrace& trace) {
  if (trace.rounds.empty()) return {};
  std::vector<double> sum(trace.rounds.front().losses.size(), 0.0);
  for (const PlayRound& r : trace.rounds) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r.losses[i];
  }
  return sum;
}

RegretCheck VerifyRegret(const PlayTrace& trace,
                         const BoundedMeasure& comparator, double kappa,
                         double lambda) {
  if (trace.rounds.empty()) {
    throw Error(ErrorCode::kBadParams, "empty trace");
  }
  const std::size_t n = trace.rounds.front().losses.size();
  if (comparator.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "comparator length does not match the game");
  }
  if (Density(comparator) < kappa - kDensityTolerance) {
    throw Error(ErrorCode::kComparatorNotDense,
                "comparator density " + std::to_string(Density(comparator)) +
                    " is below kappa " + std::to_string(kappa));
  }
  const DiscreteDistribution comp = InducedDistribution(comparator);
  const double t = static_cast<double>(trace.size());

  double booster = 0.0;
  double fixed = 0.0;
  for (const PlayRound& r : trace.rounds) {
    booster += r.expected_loss;
    fixed += ExpectedLoss(r.losses, comp);
  }
  const double kn = kappa * static_cast<double>(n);
  const double kl =
      KlDivergence(comparator, BoundedMeasure::Constant(n, kappa));
  const double lhs = booster / t;
  const double rhs = fixed / t + lambda + kl / (lambda * kn * t);
  return {lhs <= rhs + 1e-9, rhs - lhs};
}

SandwichReport SandwichCheck(const LabeledSample& sample, double gamma,
                             double kappa, double lambda, std::int64_t rounds,
                             WeakLearner& learner, Rng& rng,
                             const SandwichOptions& options) {
  if (!(gamma >= 0.0)) {
    throw Error(ErrorCode::kBadParams, "gamma must be non-negative");
  }
  const std::size_t n = sample.size();
  LazyBregmanProducer producer(kappa, lambda);
  BoostOutput out =
      Boost(sample, BoostConfig{kappa, lambda, rounds}, producer, learner, rng);

  SandwichReport report;
  report.rounds = rounds;
  report.gamma = gamma;
  const double t = static_cast<double>(rounds);

  // M(D, h) = 1/2 + advantage of h under D, since l_i = 1/2 + y_i clamp / 2.
  report.min_advantage = out.trace.front().advantage;
  for (std::size_t r = 0; r < out.trace.size(); ++r) {
    const double adv = out.trace[r].advantage;
    report.booster_loss += 0.5 + adv;
    report.min_advantage = std::min(report.min_advantage, adv);
    if (adv < gamma) {
      if (options.strict) {
        throw Error(ErrorCode::kAdvantageViolation,
                    "round " + std::to_string(r) + ": advantage " +
                        std::to_string(adv) + " is below gamma");
      }
      ++report.advantage_violations;
    }
  }

  // sum_t y_i clamp(h_t(x_i)) per example.
  std::vector<double> margin_sums(n);
  std::vector<double> margins(n);
  for (std::size_t i = 0; i < n; ++i) {
    margin_sums[i] =
        static_cast<double>(sample.label(i)) * out.training_clamped_sum[i];
    margins[i] = margin_sums[i] / t;
  }
  const PythiaResult pythia = PythiaFromMargins(margins, kappa);
  report.theta = pythia.theta;

  double set_loss = 0.0;
  report.bad_margin_holds = true;
  for (std::size_t i : pythia.set) {
    set_loss += 0.5 * t + 0.5 * margin_sums[i];
    if (margin_sums[i] > t * pythia.theta + 1e-9) {
      report.bad_margin_holds = false;
    }
  }
  report.comparator_loss = set_loss / static_cast<double>(pythia.set.size());

  std::vector<double> indicator(n, 0.0);
  for (std::size_t i : pythia.set) indicator[i] = 1.0;
  const double kl = KlDivergence(BoundedMeasure(std::move(indicator)),
                                 BoundedMeasure::Constant(n, kappa));
  const double kn = kappa * static_cast<double>(n);
  report.regret_terms = lambda * t + kl / (kn * lambda);
  report.upper_bound = report.comparator_loss + report.regret_terms;
  report.lower_bound = 0.5 * t + t * gamma;
  report.pythia_bound = 0.5 * t + 0.5 * t * report.theta;

  const double slack = 1e-6 * t;
  report.lower_holds = report.lower_bound <= report.booster_loss + slack;
  report.upper_holds = report.booster_loss <= report.upper_bound + slack;
  report.pythia_holds = report.comparator_loss <= report.pythia_bound + slack;
  report.theta_at_least_gamma = report.theta >= gamma;
  report.margin_failure_fraction = MarginFailureFraction(out, sample, gamma);
  return report;
}

}  // namespace privboost
