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

#include "privboost/error.h"

#include <string>

namespace privboost {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kInvalidMeasure:
      return "InvalidMeasure";
    case ErrorCode::kZeroMeasure:
      return "ZeroMeasure";
    case ErrorCode::kTooDense:
      return "TooDense";
    case ErrorCode::kAllZero:
      return "AllZero";
    case ErrorCode::kInfeasibleProjection:
      return "InfeasibleProjection";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kNegativeRho:
      return "NegativeRho";
    case ErrorCode::kBadDelta:
      return "BadDelta";
    case ErrorCode::kBadSigma:
      return "BadSigma";
    case ErrorCode::kBadTarget:
      return "BadTarget";
    case ErrorCode::kBadParams:
      return "BadParams";
    case ErrorCode::kBadConfig:
      return "BadConfig";
    case ErrorCode::kBadLoss:
      return "BadLoss";
    case ErrorCode::kWeakLearnerFailure:
      return "WeakLearnerFailure";
    case ErrorCode::kSmoothnessViolation:
      return "SmoothnessViolation";
    case ErrorCode::kSampleTooSmall:
      return "SampleTooSmall";
    case ErrorCode::kComparatorNotDense:
      return "ComparatorNotDense";
    case ErrorCode::kAdvantageViolation:
      return "AdvantageViolation";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kNormViolation:
      return "NormViolation";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace privboost
