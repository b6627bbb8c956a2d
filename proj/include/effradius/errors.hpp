// Copyright 2026 The effradius Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EFFRADIUS_ERRORS_HPP_
#define EFFRADIUS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace effradius {

enum class ErrorCode {
  kDimensionMismatch,
  kAsymmetricMatrix,
  kNotPositiveSemidefinite,
  kNoMinimizer,
  kNonPositiveG,
  kNonPositiveDenominator,
  kMalformedConstraints,
  kInfeasibleBasePoint,
  kIndexOutOfRange,
  kNonUnitDirection,
  kZeroDirection,
  kEmptyX2,
  kZeroWeights,
  kWitnessVerificationFailed,
  kInvalidArgument,
  kParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kAsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::kNotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::kNoMinimizer: return "NoMinimizer";
    case ErrorCode::kNonPositiveG: return "NonPositiveG";
    case ErrorCode::kNonPositiveDenominator: return "NonPositiveDenominator";
    case ErrorCode::kMalformedConstraints: return "MalformedConstraints";
    case ErrorCode::kInfeasibleBasePoint: return "InfeasibleBasePoint";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonUnitDirection: return "NonUnitDirection";
    case ErrorCode::kZeroDirection: return "ZeroDirection";
    case ErrorCode::kEmptyX2: return "EmptyX2";
    case ErrorCode::kZeroWeights: return "ZeroWeights";
    case ErrorCode::kWitnessVerificationFailed: return "WitnessVerificationFailed";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace effradius

#endif  // EFFRADIUS_ERRORS_HPP_
