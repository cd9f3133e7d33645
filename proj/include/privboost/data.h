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

// Synthetic margin data, random classification noise, and CSV files.
//
// Dataset CSV: one example per line, d decimal feature columns followed by a
// "+1" or "-1" label. An optional first line "# d=<d> tau=<tau> seed=<seed>"
// records how the data was generated. Flip masks are a one-column CSV of
// indices under an "index" header.

#ifndef PRIVBOOST_DATA_H_
#define PRIVBOOST_DATA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privboost/sample.h"

namespace privboost {

// Rows whose norm exceeds 1 by at most this much are scaled back into the
// unit ball on read; anything further out is rejected.
inline constexpr double kReadNormSlack = 1e-6;

struct GeneratorConfig {
  std::int64_t d = 2;
  std::int64_t n = 100;
  double tau = 0.1;
  std::uint64_t seed = 0;
  // Unit vector; drawn from the seed when absent.
  std::optional<std::vector<double>> target_direction;

  // Throws kBadConfig.
  void Validate() const;
};

struct MarginSample {
  LabeledSample sample;
  LinearHypothesis target;
};

// Each example i uses its own stream (seed, "example", i): a sign s, a margin
// m ~ U[tau, 1], a direction v uniform on the sphere orthogonal to u and a
// radius r ~ U[0, sqrt(1 - m^2)]; x = s m u + r v and y = s.
MarginSample GenerateMarginSample(const GeneratorConfig& cfg);

struct NoiseConfig {
  double eta = 0.0;
  std::uint64_t seed = 0;

  // Throws kBadConfig unless 0 <= eta < 0.5.
  void Validate() const;
};

// Indices in [0, n) whose label the noise oracle flips. Depends on
// (seed, index) only.
std::vector<std::size_t> FlipMask(std::size_t n, const NoiseConfig& noise);

struct NoisySample {
  LabeledSample sample;
  // Ascending.
  std::vector<std::size_t> flipped;
};

NoisySample ApplyRcn(const LabeledSample& sample, const NoiseConfig& noise);

struct SampleHeader {
  std::int64_t d = 0;
  double tau = 0.0;
  std::uint64_t seed = 0;
};

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

std::string SampleToCsv(const LabeledSample& sample,
                        const std::optional<SampleHeader>& header = {});
// Throws kParseError (with line and column) and kNormViolation.
LabeledSample SampleFromCsv(const std::string& text);

void WriteSample(const LabeledSample& sample, const std::string& path,
                 const std::optional<SampleHeader>& header = {});
LabeledSample ReadSample(const std::string& path);

void WriteFlipMask(const std::vector<std::size_t>& mask,
                   const std::string& path);
std::vector<std::size_t> ReadFlipMask(const std::string& path);

// Whole-file helpers; the write goes through a temporary and a rename.
std::string ReadFile(const std::string& path);
void WriteFileAtomic(const std::string& path, const std::string& contents);

}  // namespace privboost

#endif  // PRIVBOOST_DATA_H_
