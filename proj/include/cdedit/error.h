// Copyright 2026 The cdedit Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdedit {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownBackend,
  kUnsupportedSecurityLevel,
  kBackendMismatch,
  kDeserialization,
  kPolicySyntax,
  kEmptyPolicy,
  kPolicyTooLarge,
  kLadderRange,
  kUnauthorized,
  kIntegrityFailure,
  kVerifyFailed,
  kTrapdoorMismatch,
  kInsufficientDeposit,
  kUnknownTarget,
  kUnknownRequester,
  kUnknownToken,
  kExhausted,
  kExpired,
  kInvalidToken,
  kLevelTooLow,
  kTokenKindMismatch,
  kTargetMismatch,
  kImmutableTarget,
  kNonceExhausted,
  kLinkBroken,
  kEmptyList,
  kMissingLog,
  kUnknownModifier,
  kUnknownOwner,
  kEmptyAttributeSet,
  kScenarioStep,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library is an Error carrying a code, so
// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define CDEDIT_ENFORCE(cond, code, msg)      \
  do {                                       \
    if (!(cond)) {                           \
      throw ::cdedit::Error((code), (msg));  \
    }                                        \
  } while (false)

}  // namespace cdedit
