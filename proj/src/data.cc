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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <utility>

#include "privboost/error.h"
#include "privboost/rng.h"

namespace privboost {
namespace {

std::vector<double> RandomUnitVector(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  double norm_sq = 0.0;
  while (norm_sq == 0.0) {
    for (double& x : v) x = rng.Normal();
    norm_sq = Dot(v, v);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : v) x *= inv;
  return v;
}

// Uniform direction in the orthogonal complement of the unit vector u; all
// zeros when d = 1.
std::vector<double> OrthogonalDirection(Rng& rng, std::span<const double> u) {
  std::vector<double> v(u.size(), 0.0);
  if (u.size() < 2) return v;
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (double& x : v) x = rng.Normal();
    const double along = Dot(v, u);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= along * u[k];
    const double norm = std::sqrt(Dot(v, v));
    if (norm > 1e-8) {
      for (double& x : v) x /= norm;
      return v;
    }
  }
  throw Error(ErrorCode::kBadConfig, "could not draw an orthogonal direction");
}

[[noreturn]] void ParseFail(std::size_t line, std::size_t column,
                            const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) +
                                          ", column " + std::to_string(column) +
                                          ": " + what);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ParseDouble(std::string_view field, double& out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size() &&
         std::isfinite(out);
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      return fields;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

}  // namespace

void GeneratorConfig::Validate() const {
  if (d < 1 || n < 1) {
    throw Error(ErrorCode::kBadConfig, "d and n must be at least 1");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "tau must lie in (0, 1)");
  }
  if (target_direction) {
    if (target_direction->size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorCode::kBadConfig, "target direction has wrong length");
    }
    const double norm = std::sqrt(Dot(*target_direction, *target_direction));
    if (!(std::abs(norm - 1.0) <= 1e-9)) {
      throw Error(ErrorCode::kBadConfig,
                  "target direction must be a unit vector");
    }
  }
}

MarginSample GenerateMarginSample(const GeneratorConfig& cfg) {
  cfg.Validate();
  const auto d = static_cast<std::size_t>(cfg.d);
  const auto n = static_cast<std::size_t>(cfg.n);
  const Rng root(cfg.seed);
  std::vector<double> u;
  if (cfg.target_direction) {
    u = *cfg.target_direction;
  } else {
    Rng target_rng = root.Derive("target");
    u = RandomUnitVector(target_rng, d);
  }

  std::vector<double> features(n * d);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.Derive("example", i);
    const int s = rng.Sign();
    const double m = rng.Uniform(cfg.tau, 1.0);
    const std::vector<double> v = OrthogonalDirection(rng, u);
    const double r = rng.Uniform(0.0, std::sqrt(std::max(0.0, 1.0 - m * m)));
    double* x = features.data() + i * d;
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = static_cast<double>(s) * m * u[k] + r * v[k];
    }
    labels[i] = s;
  }
  return {LabeledSample(d, std::move(features), std::move(labels)),
          LinearHypothesis(std::move(u))};
}

void NoiseConfig::Validate() const {
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw Error(ErrorCode::kBadConfig, "eta must lie in [0, 0.5)");
  }
}

std::vector<std::size_t> FlipMask(std::size_t n, const NoiseConfig& noise) {
  noise.Validate();
  std::vector<std::size_t> mask;
  if (noise.eta == 0.0) return mask;
  const Rng root(noise.seed);
  for (std::size_t i = 0; i < n; ++i) {
    if (root.Derive("rcn", i).Uniform01() < noise.eta) mask.push_back(i);
  }
  return mask;
}

NoisySample ApplyRcn(const LabeledSample& sample, const NoiseConfig& noise) {
  std::vector<std::size_t> mask = FlipMask(sample.size(), noise);
  std::vector<int> labels(sample.labels().begin(), sample.labels().end());
  for (std::size_t i : mask) labels[i] = -labels[i];
  return {sample.WithLabels(std::move(labels)), std::move(mask)};
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw Error(ErrorCode::kIoError, "could not format a number");
  }
  return std::string(buf, ptr);
}

std::string SampleToCsv(const LabeledSample& sample,
                        const std::optional<SampleHeader>& header) {
  std::string out;
  if (header) {
    out += "# d=" + std::to_string(header->d) +
           " tau=" + FormatDouble(header->tau) +
           " seed=" + std::to_string(header->seed) + "\n";
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (double v : sample.features(i)) {
      out += FormatDouble(v);
      out += ',';
    }
    out += sample.label(i) > 0 ? "+1\n" : "-1\n";
  }
  return out;
}

LabeledSample SampleFromCsv(const std::string& text) {
  std::vector<double> features;
  std::vector<int> labels;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (labels.empty()) continue;
      ParseFail(line_no, 1, "comment after the first example");
    }
    const std::vector<std::string_view> fields = SplitFields(line);
    if (fields.size() < 2) {
      ParseFail(line_no, 1, "need at least one feature and a label");
    }
    const std::size_t row_dim = fields.size() - 1;
    if (dim == 0) {
      dim = row_dim;
    } else if (row_dim != dim) {
      ParseFail(line_no, fields.size(),
                "expected " + std::to_string(dim + 1) + " columns, found " +
                    std::to_string(fields.size()));
    }
    const std::size_t row_start = features.size();
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < row_dim; ++k) {
      double v = 0.0;
      if (!ParseDouble(fields[k], v)) {
        ParseFail(line_no, k + 1,
                  "not a finite number: '" + std::string(fields[k]) + "'");
      }
      features.push_back(v);
      norm_sq += v * v;
    }
    const std::string_view label = fields.back();
    if (label == "+1" || label == "1") {
      labels.push_back(1);
    } else if (label == "-1") {
      labels.push_back(-1);
    } else {
      ParseFail(line_no, fields.size(),
                "label must be +1 or -1, found '" + std::string(label) + "'");
    }
    const double norm = std::sqrt(norm_sq);
    if (norm > 1.0 + kReadNormSlack) {
      throw Error(ErrorCode::kNormViolation,
                  "line " + std::to_string(line_no) + ": norm " +
                      FormatDouble(norm) + " exceeds 1");
    }
    if (norm > 1.0 + kUnitBallTolerance) {
      for (std::size_t k = row_start; k < features.size(); ++k) {
        features[k] /= norm;
      }
    }
  }
  if (labels.empty()) ParseFail(line_no + 1, 1, "no examples");
  return LabeledSample(dim, std::move(features), std::move(labels));
}

void WriteSample(const LabeledSample& sample, const std::string& path,
                 const std::optional<SampleHeader>& header) {
  WriteFileAtomic(path, SampleToCsv(sample, header));
}

LabeledSample ReadSample(const std::string& path) {
  return SampleFromCsv(ReadFile(path));
}

void WriteFlipMask(const std::vector<std::size_t>& mask,
                   const std::string& path) {
  std::string out = "index\n";
  for (std::size_t i : mask) out += std::to_string(i) + "\n";
  WriteFileAtomic(path, out);
}

std::vector<std::size_t> ReadFlipMask(const std::string& path) {
  const std::string text = ReadFile(path);
  std::istringstream in(text);
  std::string raw;
  std::vector<std::size_t> mask;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || (line_no == 1 && line == "index")) continue;
    std::size_t v = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      ParseFail(line_no, 1, "not an index: '" + std::string(line) + "'");
    }
    mask.push_back(v);
  }
  return mask;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp);
    out << contents;
    if (!out.flush()) throw Error(ErrorCode::kIoError, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot rename into " + path);
  }
}

}  // namespace privboost
