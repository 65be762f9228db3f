// Copyright 2026 The EFPE Solver Authors.
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

#ifndef EFPE_ERROR_HPP_
#define EFPE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace efpe {

enum class ErrorCode {
  kInvalidGame,
  kPerfectRecallViolation,
  kParseError,
  kUnsupportedRank,
  kEpsilonTooLarge,
  kConfigInvalid,
  kGameSizeMismatch,
  kSchemaMismatch,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace efpe

#endif  // EFPE_ERROR_HPP_
