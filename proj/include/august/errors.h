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

#ifndef AUGUST_ERRORS_H_
#define AUGUST_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace august {

enum class ErrorCode {
  kSampleTooSmall,
  kTooManyCombinations,
  kDepthOutOfRange,
  kLengthNotPowerOfTwo,
  kInvalidCellProbabilities,
  kTiesPresent,
  kInvalidTiePolicy,
  kDegenerateVector,
  kLambdaMismatch,
  kQuadratureFailure,
  kSingularCovariance,
  kDimensionMismatch,
  kEmptySample,
  kInvalidArgument,
  kParseFailure,
  kIOFailure,
  kCorruptFile,
};

// Stable identifier used in machine-readable error objects.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace august

#endif  // AUGUST_ERRORS_H_
