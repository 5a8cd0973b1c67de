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

#ifndef DYNMAT_ERROR_HPP_
#define DYNMAT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dynmat {

enum class ErrorCode {
  kUnknownVersion,
  kElementAlreadyPresent,
  kElementOutOfGroundSet,
  kElementAbsent,
  kMalformedInstance,
  kDegreePreconditionViolated,
  kVariantSetMismatch,
  kWrongSideElement,
  kElementNotInX,
  kElementAlreadyInX,
  kResultingSetDependent,
  kNotCommonIndependent,
  kGroundSetMismatch,
  kDuplicateWeights,
  kElementPresent,
  kZeroRankMatroid,
  kLoopElement,
  kGroundSetTooLarge,
  kParseError,
  kInvalidArgument,
};

const char* error_code_name(ErrorCode code);

class MatroidError : public std::runtime_error {
 public:
  MatroidError(ErrorCode code, const std::string& what);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

}  // namespace dynmat

#endif  // DYNMAT_ERROR_HPP_
