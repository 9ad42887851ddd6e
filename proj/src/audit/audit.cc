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

#include "cdedit/audit/audit.h"

#include <array>
#include <vector>

#include "cdedit/error.h"

namespace cdedit::audit {

namespace {

constexpr std::array<std::string_view, 4> kViolationNames{
    "over-count", "token-misuse", "bad-signature", "bad-collision"};

AuditRecord Violation(ViolationKind kind, std::string detail) {
  AuditRecord r;
  r.verdict = Verdict::kViolation;
  r.violation = kind;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

std::string_view VerdictName(Verdict v) {
  return v == Verdict::kClean ? "clean" : "violation";
}

std::string_view ViolationName(ViolationKind v) {
  return kViolationNames[static_cast<size_t>(v)];
}

ViolationKind ParseViolation(std::string_view text) {
  for (size_t i = 0; i < kViolationNames.size(); ++i) {
    if (kViolationNames[i] == text) return static_cast<ViolationKind>(i);
  }
  throw Error(ErrorCode::kDeserialization,
              "unknown violation '" + std::string(text) + "'");
}

AuditRecord AuditEdit(const HashSuite& hs, const pch::PchTuple& old_tuple,
                      const pch::PchTuple& new_tuple,
                      const token::PrivilegeToken& token,
                      std::span<const chain::EditLogEntry> log) {
  // (1) ch = p h'^{m} = p' h'^{m'}
  bool collision = false;
  try {
    collision = old_tuple.ch == new_tuple.ch &&
                old_tuple.hprime == new_tuple.hprime &&
                pch::VerifyDigest(hs, old_tuple) &&
                pch::VerifyDigest(hs, new_tuple);
  } catch (const Error&) {
  }
  if (!collision) {
    return Violation(ViolationKind::kBadCollision,
                     "chameleon digests do not collide");
  }

  // (2) (c, sigma) under (epk, vk) and (c', sigma') under (epk', vk').
  bool signatures = false;
  try {
    signatures = pch::VerifySignature(hs, old_tuple) &&
                 pch::VerifySignature(hs, new_tuple);
  } catch (const Error&) {
  }
  if (!signatures) {
    return Violation(ViolationKind::kBadSignature,
                     "one-time signature does not verify");
  }

  // (3) number of edits made with the token.
  const std::string id = token.id();
  size_t count = 0;
  for (const auto& e : log) count += e.token_id == id ? 1 : 0;
  if (count > token.request.n) {
    return Violation(ViolationKind::kOverCount,
                     std::to_string(count) + " edits on a token for " +
                         std::to_string(token.request.n));
  }

  // (4) every logged edit within the token's kind, targets and level.
  for (const auto& e : log) {
    if (e.token_id != id) continue;
    if (e.editor != token.request.requester ||
        !token.Targets(e.type, e.target, e.block_height) ||
        !token::LevelAllows(e.editor_level, token.kind)) {
      return Violation(ViolationKind::kTokenMisuse,
                       "edit " + std::to_string(e.seq) + " is outside " +
                           std::string(token::TokenKindName(token.kind)) +
                           " token " + id);
    }
  }

  AuditRecord r;
  r.verdict = Verdict::kClean;
  return r;
}

CredibilityLevel Demote(CredibilityLevel level) {
  return level == CredibilityLevel::kEjected
             ? level
             : static_cast<CredibilityLevel>(static_cast<int>(level) - 1);
}

CredibilityLevel Promote(CredibilityLevel level) {
  if (level == CredibilityLevel::kEjected || level == CredibilityLevel::kMnB) {
    return level;
  }
  return static_cast<CredibilityLevel>(static_cast<int>(level) + 1);
}

AuditRecord Auditor::Audit(const HashSuite& hs, const chain::Chain& chain,
                           const token::Pts& pts, uint64_t seq,
                           const std::string& reporter,
                           const std::string& report_id) const {
  const auto& log = chain.log();
  CDEDIT_ENFORCE(seq < log.size(), ErrorCode::kMissingLog,
                 "no edit log entry " + std::to_string(seq));
  const chain::EditLogEntry& entry = log[seq];
  token::PrivilegeToken token = pts.Token(entry.token_id);

  std::vector<chain::EditLogEntry> with_token;
  for (const auto& e : log) {
    if (e.token_id == entry.token_id) with_token.push_back(e);
  }
  AuditRecord r =
      AuditEdit(hs, entry.old_tuple, entry.new_tuple, token, with_token);
  r.report_id = report_id;
  r.reporter = reporter;
  r.modifier = entry.editor;
  r.edit_seq = seq;
  r.token_id = entry.token_id;
  return r;
}

CredibilityLevel Auditor::AdjustLevel(AuditRecord& record, token::Pts& pts) {
  const std::string& who = record.modifier;
  record.level_before = pts.Level(who);
  CredibilityLevel next = record.level_before;
  if (record.verdict == Verdict::kViolation) {
    next = Demote(record.level_before);
    credits_[who] = 0;
    auto s = pts.Slash(record.token_id, record.reporter,
                       policy_.reporter_share_percent);
    record.settlement = {s.to_reporter, s.burned, 0};
  } else {
    uint32_t& c = credits_[who];
    if (record.level_before != CredibilityLevel::kEjected &&
        ++c >= policy_.promotion_threshold) {
      next = Promote(record.level_before);
      c = 0;
    }
    record.settlement = {0, 0, pts.Refund(record.token_id)};
  }
  pts.SetLevel(who, next);
  record.level_after = next;
  return next;
}

uint32_t Auditor::credits(const std::string& modifier) const {
  auto it = credits_.find(modifier);
  return it == credits_.end() ? 0 : it->second;
}

nlohmann::json Auditor::ToJson() const {
  return {{"promotion_threshold", policy_.promotion_threshold},
          {"reporter_share_percent", policy_.reporter_share_percent},
          {"credits", credits_}};
}

Auditor Auditor::FromJson(const nlohmann::json& j) {
  Auditor a({j.at("promotion_threshold").get<uint32_t>(),
             j.at("reporter_share_percent").get<uint32_t>()});
  a.credits_ = j.at("credits").get<std::map<std::string, uint32_t>>();
  return a;
}

nlohmann::json ToJson(const AuditRecord& r) {
  nlohmann::json j = {
      {"report_id", r.report_id},
      {"reporter", r.reporter},
      {"modifier", r.modifier},
      {"edit_seq", r.edit_seq},
      {"token_id", r.token_id},
      {"verdict", VerdictName(r.verdict)},
      {"violation", nullptr},
      {"detail", r.detail},
      {"level_before", token::LevelName(r.level_before)},
      {"level_after", token::LevelName(r.level_after)},
      {"settlement",
       {{"to_reporter", r.settlement.to_reporter},
        {"burned", r.settlement.burned},
        {"refunded", r.settlement.refunded}}}};
  if (r.violation) j["violation"] = ViolationName(*r.violation);
  return j;
}

AuditRecord AuditRecordFromJson(const nlohmann::json& j) {
  AuditRecord r;
  r.report_id = j.at("report_id").get<std::string>();
  r.reporter = j.at("reporter").get<std::string>();
  r.modifier = j.at("modifier").get<std::string>();
  r.edit_seq = j.at("edit_seq").get<uint64_t>();
  r.token_id = j.at("token_id").get<std::string>();
  const auto verdict = j.at("verdict").get<std::string>();
  CDEDIT_ENFORCE(verdict == "clean" || verdict == "violation",
                 ErrorCode::kDeserialization, "unknown verdict " + verdict);
  r.verdict = verdict == "clean" ? Verdict::kClean : Verdict::kViolation;
  if (!j.at("violation").is_null()) {
    r.violation = ParseViolation(j.at("violation").get<std::string>());
  }
  CDEDIT_ENFORCE(r.violation.has_value() == (r.verdict == Verdict::kViolation),
                 ErrorCode::kDeserialization,
                 "violation kind must accompany a violation verdict");
  r.detail = j.at("detail").get<std::string>();
  r.level_before = token::ParseLevel(j.at("level_before").get<std::string>());
  r.level_after = token::ParseLevel(j.at("level_after").get<std::string>());
  const auto& s = j.at("settlement");
  r.settlement = {s.at("to_reporter").get<uint64_t>(),
                  s.at("burned").get<uint64_t>(),
                  s.at("refunded").get<uint64_t>()};
  return r;
}

}  // namespace cdedit::audit
