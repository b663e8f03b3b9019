// Copyright 2026 The ModalGame Authors
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

#ifndef MODALGAME_ERROR_H_
#define MODALGAME_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace modalgame {

enum class ErrorCode {
  kDanglingArc,
  kWalkLayerDisconnected,
  kNonPositiveTravelTime,
  kInvalidArc,
  kUnreachable,
  kEmptyLayer,
  kFactorBelowOne,
  kRoadUnreachable,
  kDegenerateTiming,
  kOutOfRange,
  kSolverFailure,
  kAssumptionViolated,
  kTooLarge,
  kParseError,
  kValidationError,
  kIoError,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception; `code()` identifies the
// failure class for callers that need to branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace modalgame

#endif  // MODALGAME_ERROR_H_
