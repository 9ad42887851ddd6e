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

#include <map>
#include <optional>
#include <span>
#include <string>

#include "cdedit/chain/chain.h"
#include "cdedit/pch/pch.h"
#include "cdedit/token/token.h"
#include "json.hpp"

// Authority-side audit of reported edits and the credibility level policy.
namespace cdedit::audit {

using token::CredibilityLevel;

enum class Verdict { kClean, kViolation };
enum class ViolationKind { kOverCount, kTokenMisuse, kBadSignature, kBadCollision };

std::string_view VerdictName(Verdict v);
std::string_view ViolationName(ViolationKind v);
ViolationKind ParseViolation(std::string_view text);

struct Settlement {
  uint64_t to_reporter = 0;
  uint64_t burned = 0;
  uint64_t refunded = 0;
};

struct AuditRecord {
  std::string report_id;
  std::string reporter;
  std::string modifier;
  uint64_t edit_seq = 0;
  std::string token_id;
  Verdict verdict = Verdict::kClean;
  std::optional<ViolationKind> violation;
  std::string detail;
  CredibilityLevel level_before = CredibilityLevel::kM1T;
  CredibilityLevel level_after = CredibilityLevel::kM1T;
  Settlement settlement;
};

nlohmann::json ToJson(const AuditRecord& r);
AuditRecord AuditRecordFromJson(const nlohmann::json& j);

// The checks, in order: collision equation on both tuples, both signature
// generations, edit count against the token allowance, and token coverage of
// every logged target within the editor's level. The first failure decides
// the violation kind. `log` holds every edit made with the token.
AuditRecord AuditEdit(const HashSuite& hs, const pch::PchTuple& old_tuple,
                      const pch::PchTuple& new_tuple,
                      const token::PrivilegeToken& token,
                      std::span<const chain::EditLogEntry> log);

struct AuditPolicy {
  uint32_t promotion_threshold = 5;
  uint32_t reporter_share_percent = 50;
};

CredibilityLevel Demote(CredibilityLevel level);
CredibilityLevel Promote(CredibilityLevel level);

class Auditor {
 public:
  explicit Auditor(AuditPolicy policy = {}) : policy_(policy) {}

  const AuditPolicy& policy() const { return policy_; }

  // Audits log entry `seq`. Throws MissingLog or UnknownToken.
  AuditRecord Audit(const HashSuite& hs, const chain::Chain& chain,
                    const token::Pts& pts, uint64_t seq,
                    const std::string& reporter,
                    const std::string& report_id) const;

  // Applies the level policy and settles the token escrow; fills
  // level_before/after and the settlement into `record`.
  CredibilityLevel AdjustLevel(AuditRecord& record, token::Pts& pts);

  uint32_t credits(const std::string& modifier) const;

  nlohmann::json ToJson() const;
  static Auditor FromJson(const nlohmann::json& j);

 private:
  AuditPolicy policy_;
  std::map<std::string, uint32_t> credits_;
};

}  // namespace cdedit::audit
