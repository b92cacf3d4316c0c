// Copyright 2026 The refalloc Authors
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

#ifndef REFALLOC_ERROR_HPP_
#define REFALLOC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace refalloc {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedId,
  kDuplicateId,
  kDuplicateUsername,
  kUnknownId,
  kHasAssignments,
  kParseError,
  kIntegrityError,
  kIoError,
  kInvalidPreAssignment,
  kSearchBudgetExceeded,
  kNotAssigned,
  kIneligibleReplacement,
  kDoubleBookedReplacement,
  kUnavailableReplacement,
  kUnknownReference,
  kDateMismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the core carries a code. Operations that can fail
// in several places at once (pre-assignment) list each failure in details().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace refalloc

#endif  // REFALLOC_ERROR_HPP_
