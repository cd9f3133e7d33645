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

// Boosting as a zero-sum game. Rows are examples, columns are hypotheses, and
// the row player's loss is the soft punishment M(i, h) = 1 - |clamp(h(x_i)) -
// y_i| / 2. The booster is a row player running lazy dense updates; the tools
// here replay that play and check its regret and margin guarantees
// numerically.

#ifndef PRIVBOOST_GAMES_H_
#define PRIVBOOST_GAMES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "privboost/boosting.h"
#include "privboost/measures.h"
#include "privboost/rng.h"
#include "privboost/sample.h"

namespace privboost {

// Slack allowed on loss entries before kBadLoss.
inline constexpr double kLossTolerance = 1e-12;

// sum_i p_i loss_i.
double ExpectedLoss(std::span<const double> losses,
                    const DiscreteDistribution& dist);

// A dense rows x cols loss matrix, row-major.
struct LossMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;

  double at(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }
};

// The three ways of writing M(P, Q): the double sum, the sum over columns
// of M(P, j) Q(j), and the sum over rows of P(i) M(i, Q).
double BilinearLoss(const LossMatrix& m, const DiscreteDistribution& p,
                    const DiscreteDistribution& q);
double BilinearLossByColumns(const LossMatrix& m, const DiscreteDistribution& p,
                             const DiscreteDistribution& q);
double BilinearLossByRows(const LossMatrix& m, const DiscreteDistribution& p,
                          const DiscreteDistribution& q);

class SoftPunishmentGame {
 public:
  explicit SoftPunishmentGame(const LabeledSample& sample) : sample_(sample) {}

  std::size_t rows() const { return sample_.size(); }
  double Entry(std::size_t i, const LinearHypothesis& h) const;
  // The column M(., h).
  std::vector<double> Column(const LinearHypothesis& h) const;
  // M(P, h).
  double Value(const DiscreteDistribution& p, const LinearHypothesis& h) const;

 private:
  const LabeledSample& sample_;
};

// Number of indices a kappa-dense 0/1 measure on n points needs: ceil(kappa n),
// computed so that an integral kappa n is not pushed up by rounding.
std::size_t DenseSetSize(double kappa, std::size_t n);

// Row strategy after the given loss history (each entry one round's loss
// vector). Throws kBadLoss for entries outside [0, 1].
BoundedMeasure LazyDenseUpdate(std::span<const std::vector<double>> history,
                               std::size_t n, double kappa, double lambda);

struct PythiaResult {
  DiscreteDistribution distribution;
  // Indices in the set, ascending.
  std::vector<std::size_t> set;
  double theta = 0.0;
};

// margins[i] = y_i H(x_i).
PythiaResult PythiaFromMargins(std::span<const double> margins, double kappa);
PythiaResult Pythia(const LabeledSample& sample,
                    std::span<const double> h_values, double kappa);

struct PlayRound {
  BoundedMeasure measure;
  DiscreteDistribution distribution;
  std::vector<double> losses;
  double expected_loss = 0.0;
};

struct PlayTrace {
  std::vector<PlayRound> rounds;

  std::size_t size() const { return rounds.size(); }
};

// The environment in iterated play. Sees the row player's current
// distribution and reveals a loss vector in [0, 1]^n.
class ColumnPlayer {
 public:
  virtual ~ColumnPlayer() = default;

  virtual std::vector<double> Play(std::size_t round,
                                   const DiscreteDistribution& row,
                                   Rng& rng) = 0;
};

// Replays a fixed list of loss vectors.
class FixedLossColumns : public ColumnPlayer {
 public:
  explicit FixedLossColumns(std::vector<std::vector<double>> losses)
      : losses_(std::move(losses)) {}

  std::vector<double> Play(std::size_t round, const DiscreteDistribution& row,
                           Rng& rng) override;

 private:
  std::vector<std::vector<double>> losses_;
};

// A weak learner answering on a sample; the loss is the soft punishment.
class WeakLearnerColumns : public ColumnPlayer {
 public:
  WeakLearnerColumns(const LabeledSample& sample, WeakLearner& learner)
      : sample_(sample), learner_(learner) {}

  std::vector<double> Play(std::size_t round, const DiscreteDistribution& row,
                           Rng& rng) override;

  const std::vector<LinearHypothesis>& hypotheses() const {
    return hypotheses_;
  }

 private:
  const LabeledSample& sample_;
  WeakLearner& learner_;
  std::vector<LinearHypothesis> hypotheses_;
};

PlayTrace IteratedPlay(std::size_t n, ColumnPlayer& columns, double kappa,
                       double lambda, std::int64_t rounds, Rng& rng);

// Minimizer of the normalized cumulative loss over kappa-dense measures: weight
// 1 on the cheapest floor(kappa n) indices, the fractional rest on the next
// one. Ties go to the lower index. For integral kappa n this is the 0/1
// indicator of the kappa n cheapest indices.
BoundedMeasure BestFixedDenseMeasure(std::span<const double> cumulative_losses,
                                     double kappa);

// A random member of the kappa-dense measures: either a 0/1 indicator of a
// random set of at least DenseSetSize(kappa, n) indices or uniform [0, 1]
// weights, projected when they fall below density kappa.
BoundedMeasure RandomDenseMeasure(std::size_t n, double kappa, Rng& rng);

// Sum over rounds of the trace's loss vectors.
std::vector<double> CumulativeLosses(const PlayTrace& trace);

struct RegretCheck {
  bool holds = false;
  // Right side minus left side.
  double slack = 0.0;
};

// (1/T) sum_t M(mu_t, l_t) <= (1/T) sum_t M(mu, l_t) + lambda
//                            + KL(mu || mu_1) / (lambda kappa n T),
// mu_1 the constant kappa measure. Throws kComparatorNotDense.
RegretCheck VerifyRegret(const PlayTrace& trace,
                         const BoundedMeasure& comparator, double kappa,
                         double lambda);

struct SandwichReport {
  std::int64_t rounds = 0;
  double gamma = 0.0;
  // T/2 + T gamma.
  double lower_bound = 0.0;
  // sum_t M(mu_t, h_t).
  double booster_loss = 0.0;
  // sum_t M(P*, h_t), P* uniform on the Pythia set.
  double comparator_loss = 0.0;
  // lambda T + KL(U(B) || mu_1) / (kappa n lambda).
  double regret_terms = 0.0;
  double upper_bound = 0.0;
  // T/2 + T theta / 2.
  double pythia_bound = 0.0;
  double theta = 0.0;
  double margin_failure_fraction = 0.0;
  double min_advantage = 0.0;
  std::int64_t advantage_violations = 0;

  bool lower_holds = false;
  bool upper_holds = false;
  bool pythia_holds = false;
  // Every Pythia index i has sum_t y_i clamp(h_t(x_i)) <= T theta.
  bool bad_margin_holds = false;
  bool theta_at_least_gamma = false;

  bool AllHold() const {
    return lower_holds && upper_holds && pythia_holds && bad_margin_holds;
  }
};

struct SandwichOptions {
  // Throw kAdvantageViolation on the first round below gamma.
  bool strict = false;
};

// Boosts with lazy dense updates and the given learner for `rounds` rounds,
// then evaluates the round-bound chain. Inequalities are checked with slack
// 1e-6 T.
SandwichReport SandwichCheck(const LabeledSample& sample, double gamma,
                             double kappa, double lambda, std::int64_t rounds,
                             WeakLearner& learner, Rng& rng,
                             const SandwichOptions& options = {});

}  // namespace privboost

#endif  // PRIVBOOST_GAMES_H_
