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

#ifndef PRIVBOOST_ERROR_H_
#define PRIVBOOST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace privboost {

enum class ErrorCode {
  kLengthMismatch,
  kDimensionMismatch,
  kInvalidMeasure,
  kZeroMeasure,
  kTooDense,
  kAllZero,
  kInfeasibleProjection,
  kTooLarge,
  kNegativeRho,
  kBadDelta,
  kBadSigma,
  kBadTarget,
  kBadParams,
  kBadConfig,
  kBadLoss,
  kWeakLearnerFailure,
  kSmoothnessViolation,
  kSampleTooSmall,
  kComparatorNotDense,
  kAdvantageViolation,
  kParseError,
  kNormViolation,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception type. The code is
// stable and is what callers (and the Python bindings) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace privboost

#endif  // PRIVBOOST_ERROR_H_
