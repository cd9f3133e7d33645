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

#include "privboost/data.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "privboost/error.h"
#include "privboost/halfspace.h"
#include "privboost/rng.h"
#include "test_util.h"

namespace privboost {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using testing_util::Vec;

Error ErrorOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(ErrorCode::kIoError, "none");
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) /
          ("privboost_data_" + name))
      .string();
}

MarginSample Generate(std::int64_t d, std::int64_t n, double tau,
                      std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.d = d;
  cfg.n = n;
  cfg.tau = tau;
  cfg.seed = seed;
  return GenerateMarginSample(cfg);
}

void ExpectMarginGuarantee(const MarginSample& m, double tau) {
  EXPECT_NEAR(m.target.Norm(), 1.0, 1e-9);
  for (std::size_t i = 0; i < m.sample.size(); ++i) {
    const double ux = m.target.Evaluate(m.sample.features(i));
    EXPECT_GE(std::abs(ux), tau - 1e-12);
    EXPECT_EQ(ux >= 0 ? 1 : -1, m.sample.label(i));
    double norm_sq = 0.0;
    for (double v : m.sample.features(i)) norm_sq += v * v;
    EXPECT_LE(std::sqrt(norm_sq), 1.0 + 1e-12);
  }
}

TEST(DataTest, MarginGuaranteeEveryBatch) {
  Rng rng(1);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto d = 1 + static_cast<std::int64_t>(seed % 12);
    const double tau = rng.Uniform(0.01, 0.99);
    ExpectMarginGuarantee(Generate(d, 200, tau, seed), tau);
  }
}

TEST(DataTest, OneDimensional) {
  const MarginSample m = Generate(1, 500, 0.4, 3);
  EXPECT_NEAR(std::abs(m.target.z()[0]), 1.0, 1e-12);
  for (std::size_t i = 0; i < m.sample.size(); ++i) {
    const double x = m.sample.features(i)[0];
    EXPECT_GE(std::abs(x), 0.4 - 1e-12);
    EXPECT_LE(std::abs(x), 1.0);
    EXPECT_EQ(x * m.target.z()[0] > 0 ? 1 : -1, m.sample.label(i));
  }
}

TEST(DataTest, TargetHasZeroError) {
  const MarginSample m = Generate(50, 10000, 0.3, 7);
  EXPECT_EQ(EmpiricalError(m.target, m.sample), 0.0);
  ExpectMarginGuarantee(m, 0.3);
}

TEST(DataTest, GivenTargetIsUsed) {
  GeneratorConfig cfg;
  cfg.d = 3;
  cfg.n = 100;
  cfg.tau = 0.2;
  cfg.target_direction = std::vector<double>{0.0, 0.6, -0.8};
  const MarginSample m = GenerateMarginSample(cfg);
  EXPECT_THAT(Vec(m.target.z()), ElementsAre(0.0, 0.6, -0.8));
  ExpectMarginGuarantee(m, 0.2);
}

TEST(DataTest, GeneratorIsReproducibleAndPrefixStable) {
  EXPECT_EQ(Generate(5, 100, 0.3, 9).sample, Generate(5, 100, 0.3, 9).sample);
  EXPECT_FALSE(Generate(5, 100, 0.3, 9).sample ==
               Generate(5, 100, 0.3, 10).sample);
  // Per-index streams: a longer draw extends a shorter one.
  const MarginSample a = Generate(5, 100, 0.3, 9);
  const MarginSample b = Generate(5, 150, 0.3, 9);
  EXPECT_EQ(a.target, b.target);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(Vec(a.sample.features(i)), Vec(b.sample.features(i)));
  }
}

TEST(DataTest, GeneratorValidation) {
  for (GeneratorConfig cfg :
       {GeneratorConfig{0, 10, 0.2, 0, {}}, GeneratorConfig{2, 0, 0.2, 0, {}},
        GeneratorConfig{2, 10, 0.0, 0, {}}, GeneratorConfig{2, 10, 1.0, 0, {}},
        GeneratorConfig{2, 10, 0.2, 0, std::vector<double>{1.0, 1.0}},
        GeneratorConfig{2, 10, 0.2, 0, std::vector<double>{1.0}}}) {
    EXPECT_EQ(ErrorOf([&] { GenerateMarginSample(cfg); }).code(),
              ErrorCode::kBadConfig);
  }
}

TEST(DataTest, RcnZeroEtaIsIdentity) {
  const LabeledSample s = testing_util::MarginData(3, 100, 0.2, 1);
  const NoisySample r = ApplyRcn(s, {0.0, 5});
  EXPECT_EQ(r.sample, s);
  EXPECT_TRUE(r.flipped.empty());
}

TEST(DataTest, RcnReproducibleAndConsistent) {
  const LabeledSample s = testing_util::MarginData(3, 1000, 0.2, 1);
  const NoisySample a = ApplyRcn(s, {0.2, 5});
  const NoisySample b = ApplyRcn(s, {0.2, 5});
  EXPECT_EQ(a.flipped, b.flipped);
  EXPECT_EQ(a.sample, b.sample);
  std::vector<bool> flipped(s.size(), false);
  for (std::size_t i : a.flipped) flipped[i] = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(a.sample.label(i), flipped[i] ? -s.label(i) : s.label(i));
    EXPECT_EQ(Vec(a.sample.features(i)), Vec(s.features(i)));
  }
  EXPECT_NE(ApplyRcn(s, {0.2, 6}).flipped, a.flipped);
}

TEST(DataTest, RcnRate) {
  const std::size_t n = 100000;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double rate =
        static_cast<double>(FlipMask(n, {0.1, seed}).size()) / n;
    EXPECT_NEAR(rate, 0.1, 0.005) << "seed " << seed;
  }
}

TEST(DataTest, RcnIndependentOfSample) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const LabeledSample s = testing_util::MarginData(2, 50, 0.2, seed);
    std::vector<int> negated(s.labels().begin(), s.labels().end());
    for (int& y : negated) y = -y;
    const double eta = rng.Uniform(0.0, 0.49);
    const NoiseConfig noise{eta, seed * 7 + 1};
    const NoisySample a = ApplyRcn(s, noise);
    EXPECT_EQ(a.flipped, ApplyRcn(s.WithLabels(negated), noise).flipped);
    EXPECT_EQ(a.flipped,
              ApplyRcn(testing_util::MarginData(4, 50, 0.7, seed + 1000), noise)
                  .flipped);
    EXPECT_EQ(a.flipped, FlipMask(50, noise));
  }
}

TEST(DataTest, NoiseValidation) {
  for (double eta : {-0.1, 0.5, 0.7}) {
    EXPECT_EQ(ErrorOf([&] { FlipMask(10, {eta, 0}); }).code(),
              ErrorCode::kBadConfig);
  }
}

// With n at the Chernoff bound and eta = alpha tau / 32, more than
// (alpha tau / 16) n flips should be rare.
TEST(DataTest, ChernoffDeskCheck) {
  const double alpha = 0.2, tau = 0.5, beta = 0.1, eta = alpha * tau / 32;
  const auto n = static_cast<std::size_t>(
      std::ceil(96.0 * std::log(4.0 / beta) / (alpha * tau)));
  EXPECT_EQ(n, 3542u);
  const double threshold = alpha * tau / 16 * static_cast<double>(n);
  int bad = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    bad += static_cast<double>(
               FlipMask(n, {eta, static_cast<std::uint64_t>(t)}).size()) >=
           threshold;
  }
  EXPECT_LE(static_cast<double>(bad) / trials, beta / 4 + 0.02);
}

TEST(DataTest, CsvSingleRow) {
  const LabeledSample s = SampleFromCsv("1.0,0.0,+1\n");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_THAT(Vec(s.features(0)), ElementsAre(1.0, 0.0));
  EXPECT_EQ(s.label(0), 1);
}

TEST(DataTest, CsvHeaderAndWhitespace) {
  const LabeledSample s = SampleFromCsv(
      "# d=2 tau=0.1 seed=3\n 0.5 , -0.5 , -1 \r\n\n+0.1,0.2,1\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.label(0), -1);
  EXPECT_EQ(s.label(1), 1);
  EXPECT_THAT(Vec(s.features(1)), ElementsAre(0.1, 0.2));
}

TEST(DataTest, CsvErrors) {
  EXPECT_EQ(ErrorOf([] { SampleFromCsv(""); }).code(), ErrorCode::kParseError);
  EXPECT_EQ(ErrorOf([] { SampleFromCsv("# d=2 tau=0.1 seed=3\n"); }).code(),
            ErrorCode::kParseError);

  const Error bad_num =
      ErrorOf([] { SampleFromCsv("0.1,0.2,+1\n0.1,abc,+1\n"); });
  EXPECT_EQ(bad_num.code(), ErrorCode::kParseError);
  EXPECT_THAT(bad_num.what(), HasSubstr("line 2, column 2"));

  const Error bad_label = ErrorOf([] { SampleFromCsv("0.1,0.2,0\n"); });
  EXPECT_EQ(bad_label.code(), ErrorCode::kParseError);
  EXPECT_THAT(bad_label.what(), HasSubstr("line 1, column 3"));

  const Error ragged = ErrorOf([] { SampleFromCsv("0.1,0.2,+1\n0.1,+1\n"); });
  EXPECT_EQ(ragged.code(), ErrorCode::kParseError);
  EXPECT_THAT(ragged.what(), HasSubstr("line 2"));

  EXPECT_EQ(ErrorOf([] { SampleFromCsv("nan,0.2,+1\n"); }).code(),
            ErrorCode::kParseError);
  EXPECT_EQ(ErrorOf([] { SampleFromCsv("+1\n"); }).code(),
            ErrorCode::kParseError);
}

TEST(DataTest, CsvNormHandling) {
  EXPECT_EQ(ErrorOf([] { SampleFromCsv("1.0,0.01,+1\n"); }).code(),
            ErrorCode::kNormViolation);
  // Round-off just outside the ball is pulled back in.
  const LabeledSample s = SampleFromCsv("1.0000005,0,-1\n");
  EXPECT_LE(s.features(0)[0], 1.0);
  EXPECT_NEAR(s.features(0)[0], 1.0, 1e-15);
}

TEST(DataTest, CsvRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledSample s = testing_util::MarginData(
        1 + static_cast<std::int64_t>(seed), 100, 0.25, seed);
    EXPECT_EQ(SampleFromCsv(SampleToCsv(s)), s);
    EXPECT_EQ(SampleFromCsv(SampleToCsv(s, SampleHeader{3, 0.25, seed})), s);
  }
}

TEST(DataTest, FileRoundTrip) {
  const LabeledSample s = testing_util::MarginData(4, 100, 0.3, 2);
  const std::string path = TempPath("roundtrip.csv");
  WriteSample(s, path, SampleHeader{4, 0.3, 2});
  EXPECT_EQ(ReadSample(path), s);
  EXPECT_THAT(ReadFile(path), ::testing::StartsWith("# d=4 tau=0.3 seed=2\n"));

  const std::vector<std::size_t> mask{0, 5, 17};
  const std::string mask_path = TempPath("mask.csv");
  WriteFlipMask(mask, mask_path);
  EXPECT_EQ(ReadFlipMask(mask_path), mask);
  EXPECT_EQ(ReadFile(mask_path), "index\n0\n5\n17\n");

  EXPECT_EQ(ErrorOf([] { ReadSample("/nonexistent/dir/x.csv"); }).code(),
            ErrorCode::kIoError);
  EXPECT_EQ(
      ErrorOf([] { WriteFileAtomic("/nonexistent/dir/x.csv", "a"); }).code(),
      ErrorCode::kIoError);
}

TEST(DataTest, FormatDoubleRoundTrips) {
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const double v =
        rng.Uniform(-1.0, 1.0) * std::pow(10.0, rng.Uniform(-20, 2));
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

}  // namespace
}  // namespace privboost
