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

#include "modalgame/error.h"

namespace modalgame {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDanglingArc: return "DanglingArc";
    case ErrorCode::kWalkLayerDisconnected: return "WalkLayerDisconnected";
    case ErrorCode::kNonPositiveTravelTime: return "NonPositiveTravelTime";
    case ErrorCode::kInvalidArc: return "InvalidArc";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kEmptyLayer: return "EmptyLayer";
    case ErrorCode::kFactorBelowOne: return "FactorBelowOne";
    case ErrorCode::kRoadUnreachable: return "RoadUnreachable";
    case ErrorCode::kDegenerateTiming: return "DegenerateTiming";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kAssumptionViolated: return "AssumptionViolated";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace modalgame
