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

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "privboost/boosting.h"
#include "privboost/error.h"
#include "privboost/halfspace.h"
#include "privboost/measures.h"
#include "privboost/rng.h"
#include "test_util.h"

namespace privboost {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::Pointwise;
using testing_util::Vec;

class FixedLearner : public WeakLearner {
 public:
  explicit FixedLearner(std::vector<double> z) : z_(std::move(z)) {}
  LinearHypothesis Learn(const LabeledSample&, const DiscreteDistribution&,
                         Rng&) override {
    return LinearHypothesis(z_);
  }

 private:
  std::vector<double> z_;
};

TEST(GamesTest, ExpectedLossExamples) {
  EXPECT_DOUBLE_EQ(ExpectedLoss(std::vector<double>{0.5, 0.5, 0.5},
                                DiscreteDistribution::Uniform(3)),
                   0.5);
  EXPECT_DOUBLE_EQ(ExpectedLoss(std::vector<double>{0.1, 0.7, 0.3},
                                DiscreteDistribution({0, 1, 0})),
                   0.7);
  EXPECT_DOUBLE_EQ(ExpectedLoss(std::vector<double>{1, 0},
                                DiscreteDistribution({0.25, 0.75})),
                   0.25);
  EXPECT_THROW(
      ExpectedLoss(std::vector<double>{1, 0}, DiscreteDistribution::Uniform(3)),
      Error);
}

TEST(GamesTest, BilinearFormsAgree) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    LossMatrix m;
    m.rows = 1 + static_cast<std::size_t>(trial % 7);
    m.cols = 1 + static_cast<std::size_t>(trial % 5);
    for (std::size_t k = 0; k < m.rows * m.cols; ++k) {
      m.entries.push_back(rng.Uniform01());
    }
    const DiscreteDistribution p =
        testing_util::RandomDistribution(m.rows, rng);
    const DiscreteDistribution q =
        testing_util::RandomDistribution(m.cols, rng);
    const double a = BilinearLoss(m, p, q);
    EXPECT_NEAR(a, BilinearLossByColumns(m, p, q), 1e-12);
    EXPECT_NEAR(a, BilinearLossByRows(m, p, q), 1e-12);
    EXPECT_GE(a, -1e-12);
    EXPECT_LE(a, 1.0 + 1e-12);
  }
}

TEST(GamesTest, SoftPunishmentEntries) {
  const LabeledSample s({{{0.5}, 1}, {{-1.0}, 1}, {{0.2}, -1}});
  const SoftPunishmentGame game(s);
  const LinearHypothesis h({4.0});
  EXPECT_DOUBLE_EQ(game.Entry(0, h), 1.0);
  EXPECT_DOUBLE_EQ(game.Entry(1, h), 0.0);
  EXPECT_NEAR(game.Entry(2, h), 0.1, 1e-15);
  const LinearHypothesis half({0.5});
  EXPECT_DOUBLE_EQ(game.Entry(0, half), 1.0 - 0.5 * 0.75);
  const DiscreteDistribution p({0.2, 0.3, 0.5});
  EXPECT_NEAR(game.Value(p, half), ExpectedLoss(game.Column(half), p), 1e-15);
  // Value = 1/2 + advantage.
  EXPECT_NEAR(game.Value(p, half), 0.5 + Advantage(half, s, p), 1e-15);

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const LabeledSample r =
        testing_util::MarginData(3, 20, 0.1, static_cast<std::uint64_t>(trial));
    const SoftPunishmentGame g(r);
    for (double v :
         g.Column(testing_util::RandomHypotheses(1, 3, 5.0, rng)[0])) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(GamesTest, DenseSetSize) {
  EXPECT_EQ(DenseSetSize(0.5, 4), 2u);
  EXPECT_EQ(DenseSetSize(0.3, 10), 3u);
  EXPECT_EQ(DenseSetSize(0.25, 10), 3u);
  EXPECT_EQ(DenseSetSize(0.01, 10), 1u);
  EXPECT_EQ(DenseSetSize(1.0, 5), 5u);
}

TEST(GamesTest, LazyDenseUpdateExamples) {
  EXPECT_THAT(Vec(LazyDenseUpdate({}, 3, 0.4, 0.2).weights()),
              ElementsAre(0.4, 0.4, 0.4));
  const std::vector<std::vector<double>> equal(5, {0.3, 0.3, 0.3, 0.3});
  EXPECT_THAT(Vec(LazyDenseUpdate(equal, 4, 0.5, 0.2).weights()),
              Pointwise(DoubleNear(1e-12), std::vector<double>(4, 0.5)));
  const std::vector<std::vector<double>> one{{1.0, 0.0}};
  EXPECT_THAT(
      Vec(LazyDenseUpdate(one, 2, 0.5, std::log(2.0)).weights()),
      Pointwise(DoubleNear(1e-12), std::vector<double>{1.0 / 3, 2.0 / 3}));
}

TEST(GamesTest, LazyDenseUpdateRejectsBadLoss) {
  for (double bad : {-0.01, 1.01, std::nan("")}) {
    const std::vector<std::vector<double>> h{{0.5, bad}};
    try {
      LazyDenseUpdate(h, 2, 0.5, 0.1);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadLoss);
    }
  }
  // Within tolerance is accepted.
  const std::vector<std::vector<double>> ok{{1.0 + 1e-13, -1e-13}};
  EXPECT_NO_THROW(LazyDenseUpdate(ok, 2, 0.5, 0.1));
}

TEST(GamesTest, LazyDenseUpdateEqualsLbNxm) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(trial);
    const LabeledSample s =
        testing_util::MarginData(3, static_cast<std::int64_t>(n), 0.2,
                                 static_cast<std::uint64_t>(trial));
    const auto hs = testing_util::RandomHypotheses(
        static_cast<std::size_t>(trial % 12), 3, 2.0, rng);
    std::vector<std::vector<double>> history;
    for (const auto& h : hs) history.push_back(SoftPunishmentLosses(h, s));
    const double kappa = rng.Uniform(0.05, 0.95);
    const double lambda = rng.Uniform(0.01, 0.99);
    EXPECT_EQ(LazyDenseUpdate(history, n, kappa, lambda),
              LbNxm(s, hs, kappa, lambda).measure);
  }
}

TEST(GamesTest, PythiaExamples) {
  const PythiaResult r =
      PythiaFromMargins(std::vector<double>{-0.1, 0.2, 0.5, 0.9}, 0.5);
  EXPECT_THAT(r.set, ElementsAre(0u, 1u));
  EXPECT_DOUBLE_EQ(r.theta, 0.2);
  EXPECT_THAT(Vec(r.distribution.probs()), ElementsAre(0.5, 0.5, 0.0, 0.0));

  const PythiaResult pos =
      PythiaFromMargins(std::vector<double>{0.4, 0.1, 0.3, 0.8}, 0.25);
  EXPECT_THAT(pos.set, ElementsAre(1u));
  EXPECT_DOUBLE_EQ(pos.theta, 0.1);

  const PythiaResult all =
      PythiaFromMargins(std::vector<double>{-0.4, -0.1, -0.3}, 0.5);
  EXPECT_THAT(all.set, ElementsAre(0u, 1u, 2u));
  EXPECT_DOUBLE_EQ(all.theta, 0.0);

  // Ties by index.
  const PythiaResult tie =
      PythiaFromMargins(std::vector<double>{0.3, 0.3, 0.3, 0.3}, 0.5);
  EXPECT_THAT(tie.set, ElementsAre(0u, 1u));
}

TEST(GamesTest, PythiaFromSample) {
  const LabeledSample s({{{0.1}, 1}, {{0.2}, -1}, {{0.5}, 1}, {{0.9}, 1}});
  // y H = (0.1, -0.2, 0.5, 0.9).
  const PythiaResult r =
      Pythia(s, std::vector<double>{0.1, 0.2, 0.5, 0.9}, 0.5);
  EXPECT_THAT(r.set, ElementsAre(0u, 1u));
  EXPECT_DOUBLE_EQ(r.theta, 0.1);
}

TEST(GamesTest, PythiaSetIsDenseAndWorst) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 40);
    const double kappa = rng.Uniform(0.02, 1.0);
    std::vector<double> margins(n);
    for (double& m : margins) m = rng.Uniform(-1.0, 1.0);
    const PythiaResult r = PythiaFromMargins(margins, kappa);
    EXPECT_GE(static_cast<double>(r.set.size()),
              kappa * static_cast<double>(n) - 1e-9);
    std::vector<bool> in(n, false);
    for (std::size_t i : r.set) in[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (margins[i] < 0) {
        EXPECT_TRUE(in[i]);
      } else if (in[i]) {
        EXPECT_LE(margins[i], r.theta);
      } else {
        EXPECT_GE(margins[i], r.theta);
      }
    }
  }
}

TEST(GamesTest, IteratedPlayFirstRoundUniform) {
  Rng rng(2);
  FixedLossColumns cols({{0.2, 0.4, 0.9}});
  const PlayTrace trace = IteratedPlay(3, cols, 0.5, 0.1, 1, rng);
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_THAT(Vec(trace.rounds[0].distribution.probs()),
              Pointwise(DoubleNear(1e-15), std::vector<double>(3, 1.0 / 3)));
  EXPECT_NEAR(trace.rounds[0].expected_loss, 0.5, 1e-15);
}

TEST(GamesTest, IteratedPlayConstantColumn) {
  const LabeledSample s = testing_util::MarginData(3, 10, 0.2, 1);
  FixedLearner zero({0.0, 0.0, 0.0});
  WeakLearnerColumns cols(s, zero);
  Rng rng(2);
  const PlayTrace trace = IteratedPlay(10, cols, 0.3, 0.2, 20, rng);
  for (const PlayRound& r : trace.rounds) {
    EXPECT_NEAR(r.expected_loss, 0.5, 1e-15);
  }
  EXPECT_EQ(cols.hypotheses().size(), 20u);
}

TEST(GamesTest, TraceIsConsistent) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 20);
    const auto rounds = 1 + trial % 30;
    FixedLossColumns cols(
        testing_util::RandomLosses(static_cast<std::size_t>(rounds), n, rng));
    const double kappa = rng.Uniform(0.1, 0.9);
    const PlayTrace trace = IteratedPlay(n, cols, kappa, 0.1, rounds, rng);
    ASSERT_EQ(trace.size(), static_cast<std::size_t>(rounds));
    std::vector<std::vector<double>> history;
    for (const PlayRound& r : trace.rounds) {
      EXPECT_EQ(r.measure, LazyDenseUpdate(history, n, kappa, 0.1));
      EXPECT_NEAR(r.expected_loss, ExpectedLoss(r.losses, r.distribution),
                  1e-12);
      EXPECT_GE(Density(r.measure), kappa - 1e-9);
      history.push_back(r.losses);
    }
  }
}

TEST(GamesTest, BestFixedExamples) {
  EXPECT_THAT(Vec(BestFixedDenseMeasure(std::vector<double>{2, 2, 2, 2}, 0.5)
                      .weights()),
              ElementsAre(1.0, 1.0, 0.0, 0.0));
  EXPECT_THAT(
      Vec(BestFixedDenseMeasure(std::vector<double>{4, 1, 9}, 1.0).weights()),
      ElementsAre(1.0, 1.0, 1.0));
  // Exhaustive 0.05-grid search over dense measures agrees.
  EXPECT_THAT(Vec(BestFixedDenseMeasure(std::vector<double>{3, 1, 2, 5}, 0.5)
                      .weights()),
              ElementsAre(0.0, 1.0, 1.0, 0.0));
  // Fractional kappa n: mass 1.2 goes 1 then 0.2 to the two cheapest.
  EXPECT_THAT(
      Vec(BestFixedDenseMeasure(std::vector<double>{5, 1, 2}, 0.4).weights()),
      Pointwise(DoubleNear(1e-12), std::vector<double>{0.0, 1.0, 0.2}));
}

// Over a grid of dense measures, nothing beats the best fixed measure.
TEST(GamesTest, BestFixedIsOptimalOnGrid) {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> cum(3);
    for (double& c : cum) c = rng.Uniform(0.0, 10.0);
    const double kappa = rng.Uniform(0.2, 0.9);
    const DiscreteDistribution best =
        InducedDistribution(BestFixedDenseMeasure(cum, kappa));
    const double best_loss = ExpectedLoss(cum, best);
    for (int a = 0; a <= 20; ++a) {
      for (int b = 0; b <= 20; ++b) {
        for (int c = 0; c <= 20; ++c) {
          const BoundedMeasure m({a / 20.0, b / 20.0, c / 20.0});
          if (Density(m) < kappa) continue;
          EXPECT_GE(ExpectedLoss(cum, InducedDistribution(m)),
                    best_loss - 1e-12);
        }
      }
    }
  }
}

TEST(GamesTest, RandomDenseMeasuresAreDense) {
  Rng rng(10);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 32);
    const double kappa = rng.Uniform(0.01, 1.0);
    const BoundedMeasure m = RandomDenseMeasure(n, kappa, rng);
    EXPECT_GE(Density(m), kappa - 1e-9);
  }
}

TEST(GamesTest, UniformSetKlClosedForm) {
  for (auto [n, kappa] :
       {std::pair{20, 0.25}, {100, 0.05}, {8, 0.5}, {10, 0.1}}) {
    const auto k = static_cast<std::size_t>(std::llround(kappa * n));
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < k; ++i) w[i * 2 % w.size()] = 1.0;
    ASSERT_DOUBLE_EQ(AbsoluteSize(BoundedMeasure(w)), static_cast<double>(k));
    EXPECT_NEAR(KlDivergence(BoundedMeasure(w),
                             BoundedMeasure::Constant(
                                 static_cast<std::size_t>(n), kappa)),
                kappa * n * std::log(1.0 / kappa), 1e-9);
  }
}

TEST(GamesTest, VerifyRegretExamples) {
  Rng rng(3);
  FixedLossColumns cols({{0.2, 0.9, 0.4, 0.1}});
  const PlayTrace one = IteratedPlay(4, cols, 0.5, 0.1, 1, rng);
  const RegretCheck c =
      VerifyRegret(one, BoundedMeasure::Constant(4, 0.5), 0.5, 0.1);
  EXPECT_TRUE(c.holds);
  EXPECT_NEAR(c.slack, 0.1, 1e-12);

  FixedLossColumns more(testing_util::RandomLosses(40, 6, rng));
  const PlayTrace trace = IteratedPlay(6, more, 0.3, 0.05, 40, rng);
  std::vector<double> avg(6, 0.0);
  for (const PlayRound& r : trace.rounds) {
    for (std::size_t i = 0; i < 6; ++i) avg[i] += r.measure[i] / 40.0;
  }
  EXPECT_TRUE(VerifyRegret(trace, BoundedMeasure(avg), 0.3, 0.05).holds);

  try {
    VerifyRegret(trace, BoundedMeasure::Constant(6, 0.1), 0.3, 0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kComparatorNotDense);
  }
}

TEST(GamesTest, RegretBoundCampaign) {
  Rng rng(2025);
  int violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.Uniform01() * 32);
    const auto rounds = 1 + static_cast<std::int64_t>(rng.Uniform01() * 100);
    const double kappa = rng.Uniform(0.05, 0.95);
    const double lambda = rng.Uniform(0.01, 0.3);
    FixedLossColumns cols(
        testing_util::RandomLosses(static_cast<std::size_t>(rounds), n, rng));
    const PlayTrace trace = IteratedPlay(n, cols, kappa, lambda, rounds, rng);
    violations +=
        !VerifyRegret(trace,
                      BestFixedDenseMeasure(CumulativeLosses(trace), kappa),
                      kappa, lambda)
             .holds;
    for (int c = 0; c < 10; ++c) {
      violations +=
          !VerifyRegret(trace, RandomDenseMeasure(n, kappa, rng), kappa, lambda)
               .holds;
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(GamesTest, SandwichPerfectLearner) {
  const LabeledSample s({{{1.0}, 1}, {{-1.0}, -1}, {{0.9}, 1}, {{-0.8}, -1}});
  FixedLearner learner({5.0});
  Rng rng(0);
  const SandwichReport r = SandwichCheck(s, 0.5, 0.5, 0.1, 30, learner, rng);
  EXPECT_DOUBLE_EQ(r.lower_bound, 30.0);
  EXPECT_NEAR(r.booster_loss, 30.0, 1e-9);
  EXPECT_TRUE(r.AllHold());
  EXPECT_DOUBLE_EQ(r.theta, 1.0);
}

TEST(GamesTest, SandwichZeroLearner) {
  const LabeledSample s = testing_util::MarginData(2, 20, 0.3, 4);
  FixedLearner learner({0.0, 0.0});
  Rng rng(0);
  const SandwichReport r = SandwichCheck(s, 0.0, 0.25, 0.1, 10, learner, rng);
  EXPECT_DOUBLE_EQ(r.lower_bound, 5.0);
  EXPECT_NEAR(r.booster_loss, 5.0, 1e-12);
  EXPECT_TRUE(r.AllHold());
  EXPECT_EQ(r.advantage_violations, 0);
}

TEST(GamesTest, SandwichFlagsWeakRounds) {
  const LabeledSample s = testing_util::MarginData(2, 20, 0.3, 4);
  FixedLearner learner({0.0, 0.0});
  Rng rng(0);
  const SandwichReport r = SandwichCheck(s, 0.1, 0.25, 0.1, 10, learner, rng);
  EXPECT_EQ(r.advantage_violations, 10);
  EXPECT_FALSE(r.lower_holds);
  try {
    SandwichCheck(s, 0.1, 0.25, 0.1, 10, learner, rng, {.strict = true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAdvantageViolation);
  }
}

TEST(GamesTest, SandwichCenteringOnSeparableData) {
  const double tau = 0.5, kappa = 0.05, gamma = tau / 4, lambda = gamma / 4;
  const auto rounds = static_cast<std::int64_t>(
      std::ceil(16.0 * std::log(1.0 / kappa) / (gamma * gamma)));
  const LabeledSample s = testing_util::MarginData(5, 500, tau, 12);
  CenteringWeakLearner learner(0.0);
  Rng rng(0);
  const SandwichReport r =
      SandwichCheck(s, gamma, kappa, lambda, rounds, learner, rng);
  EXPECT_TRUE(r.AllHold());
  EXPECT_TRUE(r.theta_at_least_gamma);
  EXPECT_LE(r.margin_failure_fraction, kappa);
  EXPECT_EQ(r.advantage_violations, 0);
}

// Every member of Pythia's set satisfies sum_t y clamp(h_t) <= T theta.
TEST(GamesTest, BadMarginInBadSet) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const LabeledSample s =
        testing_util::MarginData(3, 40, 0.2, static_cast<std::uint64_t>(trial));
    const auto hs = testing_util::RandomHypotheses(
        1 + static_cast<std::size_t>(trial % 15), 3, 1.5, rng);
    const std::vector<double> mean = ClampedAggregateValues(hs, s);
    const double t = static_cast<double>(hs.size());
    const double kappa = rng.Uniform(0.05, 0.6);
    const PythiaResult r = Pythia(s, mean, kappa);
    for (std::size_t i : r.set) {
      EXPECT_LE(s.label(i) * mean[i] * t, t * r.theta + 1e-9);
    }
  }
}

}  // namespace
}  // namespace privboost
