// Copyright 2026 The AUGUST Authors
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

#include "august/errors.h"

namespace august {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSampleTooSmall: return "SampleTooSmall";
    case ErrorCode::kTooManyCombinations: return "TooManyCombinations";
    case ErrorCode::kDepthOutOfRange: return "DepthOutOfRange";
    case ErrorCode::kLengthNotPowerOfTwo: return "LengthNotPowerOfTwo";
    case ErrorCode::kInvalidCellProbabilities: return "InvalidCellProbabilities";
    case ErrorCode::kTiesPresent: return "TiesPresent";
    case ErrorCode::kInvalidTiePolicy: return "InvalidTiePolicy";
    case ErrorCode::kDegenerateVector: return "DegenerateVector";
    case ErrorCode::kLambdaMismatch: return "LambdaMismatch";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kIOFailure: return "IOFailure";
    case ErrorCode::kCorruptFile: return "CorruptFile";
  }
  return "Unknown";
}

}  // namespace august
