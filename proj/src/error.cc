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

#include "cdedit/error.h"

namespace cdedit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownBackend: return "UnknownBackend";
    case ErrorCode::kUnsupportedSecurityLevel: return "UnsupportedSecurityLevel";
    case ErrorCode::kBackendMismatch: return "BackendMismatch";
    case ErrorCode::kDeserialization: return "Deserialization";
    case ErrorCode::kPolicySyntax: return "PolicySyntax";
    case ErrorCode::kEmptyPolicy: return "EmptyPolicy";
    case ErrorCode::kPolicyTooLarge: return "PolicyTooLarge";
    case ErrorCode::kLadderRange: return "LadderRange";
    case ErrorCode::kUnauthorized: return "Unauthorized";
    case ErrorCode::kIntegrityFailure: return "IntegrityFailure";
    case ErrorCode::kVerifyFailed: return "VerifyFailed";
    case ErrorCode::kTrapdoorMismatch: return "TrapdoorMismatch";
    case ErrorCode::kInsufficientDeposit: return "InsufficientDeposit";
    case ErrorCode::kUnknownTarget: return "UnknownTarget";
    case ErrorCode::kUnknownRequester: return "UnknownRequester";
    case ErrorCode::kUnknownToken: return "UnknownToken";
    case ErrorCode::kExhausted: return "Exhausted";
    case ErrorCode::kExpired: return "Expired";
    case ErrorCode::kInvalidToken: return "InvalidToken";
    case ErrorCode::kLevelTooLow: return "LevelTooLow";
    case ErrorCode::kTokenKindMismatch: return "TokenKindMismatch";
    case ErrorCode::kTargetMismatch: return "TargetMismatch";
    case ErrorCode::kImmutableTarget: return "ImmutableTarget";
    case ErrorCode::kNonceExhausted: return "NonceExhausted";
    case ErrorCode::kLinkBroken: return "LinkBroken";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kMissingLog: return "MissingLog";
    case ErrorCode::kUnknownModifier: return "UnknownModifier";
    case ErrorCode::kUnknownOwner: return "UnknownOwner";
    case ErrorCode::kEmptyAttributeSet: return "EmptyAttributeSet";
    case ErrorCode::kScenarioStep: return "ScenarioStep";
  }
  return "Unknown";
}

}  // namespace cdedit
