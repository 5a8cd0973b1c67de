// Copyright 2026 The Authors.
//
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

#include "dynmat/error.hpp"

namespace dynmat {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownVersion: return "UnknownVersion";
    case ErrorCode::kElementAlreadyPresent: return "ElementAlreadyPresent";
    case ErrorCode::kElementOutOfGroundSet: return "ElementOutOfGroundSet";
    case ErrorCode::kElementAbsent: return "ElementAbsent";
    case ErrorCode::kMalformedInstance: return "MalformedInstance";
    case ErrorCode::kDegreePreconditionViolated: return "DegreePreconditionViolated";
    case ErrorCode::kVariantSetMismatch: return "VariantSetMismatch";
    case ErrorCode::kWrongSideElement: return "WrongSideElement";
    case ErrorCode::kElementNotInX: return "ElementNotInX";
    case ErrorCode::kElementAlreadyInX: return "ElementAlreadyInX";
    case ErrorCode::kResultingSetDependent: return "ResultingSetDependent";
    case ErrorCode::kNotCommonIndependent: return "NotCommonIndependent";
    case ErrorCode::kGroundSetMismatch: return "GroundSetMismatch";
    case ErrorCode::kDuplicateWeights: return "DuplicateWeights";
    case ErrorCode::kElementPresent: return "ElementPresent";
    case ErrorCode::kZeroRankMatroid: return "ZeroRankMatroid";
    case ErrorCode::kLoopElement: return "LoopElement";
    case ErrorCode::kGroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

MatroidError::MatroidError(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

void fail(ErrorCode code, const std::string& detail) {
  std::string msg = error_code_name(code);
  if (!detail.empty()) msg += ": " + detail;
  throw MatroidError(code, msg);
}

}  // namespace dynmat
