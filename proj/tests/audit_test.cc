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

#include "attacks.h"
#include "cdedit/error.h"
#include "doctest.h"

namespace cdedit::audit {
namespace {

using testing::kNow;
using testing::World;
using token::CredibilityLevel;
using token::EditType;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

using Case = testing::AuditCase;
using testing::HonestTxEdit;

void ExpectViolation(const HashSuite& hs, const Case& c, ViolationKind kind) {
  AuditRecord r = c.Run(hs);
  CHECK(r.verdict == Verdict::kViolation);
  REQUIRE(r.violation.has_value());
  CHECK(*r.violation == kind);
}

TEST_CASE("honest edits audit clean") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    const bool mock = params.backend() == Backend::kMock;
    World w(std::move(params), 4);
    Auditor auditor;
    const int rounds = mock ? 30 : 3;
    for (int i = 0; i < rounds; ++i) {
      const uint64_t tx_id = w.chain.block(i % 2 == 0 ? 1 : 3).txs[0].id;
      auto t = w.Token(EditType::kTx, 1, tx_id);
      w.chain.ApplyTxEdit(w.Ctx(t), tx_id, ToBytes("v" + std::to_string(i)));
    }
    auto bt = w.Token(EditType::kBl, 3, 1);
    w.chain.ApplyBlEdit(w.Ctx(bt), 1,
                        {chain::MakeImmutableTx(w.chain.NextTxId(),
                                                ToBytes("rewritten"))});
    w.chain.ApplyBlEdit(w.Ctx(bt), 3,
                        {chain::MakeImmutableTx(w.chain.NextTxId(),
                                                ToBytes("rewritten 3"))});

    int clean = 0;
    for (uint64_t seq = 0; seq < w.chain.log().size(); ++seq) {
      auto r = auditor.Audit(w.hs, w.chain, w.pts, seq, "watcher", "r");
      clean += r.verdict == Verdict::kClean ? 1 : 0;
      CHECK(r.modifier == "mod");
      CHECK(r.edit_seq == seq);
    }
    CHECK(clean == static_cast<int>(w.chain.log().size()));
  }
}

TEST_CASE("injected bad collisions") {
  World w(GroupParams::Mock(), 2);
  const auto attacks = testing::BadCollisionAttacks(w.params);
  int detected = 0, trials = 0;
  for (int i = 0; i < 30; ++i) {
    Case c = HonestTxEdit(w, 1, "edit " + std::to_string(i));
    REQUIRE(c.Run(w.hs).verdict == Verdict::kClean);
    attacks[static_cast<size_t>(i) % attacks.size()](c, w.rng);
    ++trials;
    auto r = c.Run(w.hs);
    detected += r.violation == ViolationKind::kBadCollision ? 1 : 0;
  }
  CHECK(detected == trials);
}

TEST_CASE("injected bad signatures") {
  World w(GroupParams::Mock(), 2);
  const auto attacks = testing::BadSignatureAttacks(w.params);
  int detected = 0, trials = 0;
  for (int i = 0; i < 30; ++i) {
    Case c = HonestTxEdit(w, 1, "sig " + std::to_string(i));
    attacks[static_cast<size_t>(i) % attacks.size()](c, w.rng);
    ++trials;
    auto r = c.Run(w.hs);
    detected += r.violation == ViolationKind::kBadSignature ? 1 : 0;
  }
  CHECK(detected == trials);
}

TEST_CASE("injected over-count") {
  World w(GroupParams::Mock(), 2);
  int detected = 0, trials = 0;
  for (int i = 0; i < 30; ++i) {
    const uint32_t n = 1 + static_cast<uint32_t>(i % 4);
    Case c = HonestTxEdit(w, n, "count " + std::to_string(i));
    testing::OverCount(c);
    ++trials;
    auto r = c.Run(w.hs);
    detected += r.violation == ViolationKind::kOverCount ? 1 : 0;
  }
  CHECK(detected == trials);

  // Exactly n uses stays clean.
  Case c = HonestTxEdit(w, 3, "limit");
  c.log.push_back(c.log.front());
  c.log.push_back(c.log.front());
  CHECK(c.Run(w.hs).verdict == Verdict::kClean);
}

TEST_CASE("injected token misuse") {
  World w(GroupParams::Mock(), 4);
  const auto attacks = testing::TokenMisuseAttacks();
  int detected = 0, trials = 0;
  for (int i = 0; i < 30; ++i) {
    Case c = HonestTxEdit(w, 2, "misuse " + std::to_string(i));
    attacks[static_cast<size_t>(i) % attacks.size()](c, w.rng);
    ++trials;
    auto r = c.Run(w.hs);
    detected += r.violation == ViolationKind::kTokenMisuse ? 1 : 0;
  }
  CHECK(detected == trials);

  // A T_n token used at a level that only allows single-use tokens.
  Case c = HonestTxEdit(w, 2, "level");
  c.log.front().editor_level = CredibilityLevel::kM1T;
  ExpectViolation(w.hs, c, ViolationKind::kTokenMisuse);
}

TEST_CASE("unenforcing node edits are caught") {
  World w(GroupParams::Mock(), 2);
  Auditor auditor;
  const uint64_t tx_id = w.chain.block(1).txs[0].id;
  auto t = w.Token(EditType::kTx, 1, tx_id);
  w.chain.ApplyTxEdit(w.Ctx(t), tx_id, ToBytes("first"));
  CHECK(CodeOf([&] {
          w.chain.ApplyTxEdit(w.Ctx(t), tx_id, ToBytes("second"));
        }) == ErrorCode::kExhausted);
  auto rogue = w.Ctx(t);
  rogue.enforce_token = false;
  w.chain.ApplyTxEdit(rogue, tx_id, ToBytes("second"));
  CHECK(w.chain.Validate(w.hs));
  CHECK(auditor.Audit(w.hs, w.chain, w.pts, 0, "r", "a").verdict ==
        Verdict::kViolation);
  auto r = auditor.Audit(w.hs, w.chain, w.pts, 1, "r", "b");
  CHECK(r.violation == ViolationKind::kOverCount);

  const uint64_t other = w.chain.block(2).txs[0].id;
  w.chain.ApplyTxEdit(rogue, other, ToBytes("elsewhere"));
  // Still over-count first; a fresh token used off-target is misuse.
  auto t2 = w.Token(EditType::kTx, 2, tx_id);
  auto rogue2 = w.Ctx(t2);
  rogue2.enforce_token = false;
  w.chain.ApplyTxEdit(rogue2, other, ToBytes("off target"));
  r = auditor.Audit(w.hs, w.chain, w.pts, w.chain.log().size() - 1, "r", "c");
  CHECK(r.violation == ViolationKind::kTokenMisuse);
}

TEST_CASE("first failing check decides the kind") {
  World w(GroupParams::Mock(), 2);
  Case c = HonestTxEdit(w, 1, "order");
  c.new_tuple.m = ToBytes("forged");
  c.new_tuple.sigma = c.new_tuple.sigma + w.params.One();
  c.log.push_back(c.log.front());
  ExpectViolation(w.hs, c, ViolationKind::kBadCollision);

  c = HonestTxEdit(w, 1, "order 2");
  c.new_tuple.sigma = c.new_tuple.sigma + w.params.One();
  c.log.push_back(c.log.front());
  ExpectViolation(w.hs, c, ViolationKind::kBadSignature);

  c = HonestTxEdit(w, 1, "order 3");
  c.log.push_back(c.log.front());
  c.log.back().target += 5;
  ExpectViolation(w.hs, c, ViolationKind::kOverCount);
}

TEST_CASE("audit lookup errors") {
  World w(GroupParams::Mock(), 2);
  Auditor auditor;
  CHECK(CodeOf([&] { auditor.Audit(w.hs, w.chain, w.pts, 0, "r", "x"); }) ==
        ErrorCode::kMissingLog);
  HonestTxEdit(w, 1, "one");
  CHECK(CodeOf([&] { auditor.Audit(w.hs, w.chain, w.pts, 1, "r", "x"); }) ==
        ErrorCode::kMissingLog);
  auto stranger = token::Pts::Create(w.hs, w.rng);
  CHECK(CodeOf([&] { auditor.Audit(w.hs, w.chain, stranger, 0, "r", "x"); }) ==
        ErrorCode::kUnknownToken);
}

TEST_CASE("level lattice") {
  CHECK(Demote(CredibilityLevel::kMnB) == CredibilityLevel::kM1B);
  CHECK(Demote(CredibilityLevel::kM1B) == CredibilityLevel::kMnT);
  CHECK(Demote(CredibilityLevel::kMnT) == CredibilityLevel::kM1T);
  CHECK(Demote(CredibilityLevel::kM1T) == CredibilityLevel::kEjected);
  CHECK(Demote(CredibilityLevel::kEjected) == CredibilityLevel::kEjected);
  CHECK(Promote(CredibilityLevel::kM1T) == CredibilityLevel::kMnT);
  CHECK(Promote(CredibilityLevel::kM1B) == CredibilityLevel::kMnB);
  CHECK(Promote(CredibilityLevel::kMnB) == CredibilityLevel::kMnB);
  CHECK(Promote(CredibilityLevel::kEjected) == CredibilityLevel::kEjected);
}

TEST_CASE("violations demote and slash") {
  World w(GroupParams::Mock(), 2);
  Auditor auditor;
  const uint64_t tx_id = w.chain.block(1).txs[0].id;
  const CredibilityLevel ladder[] = {
      CredibilityLevel::kM1B, CredibilityLevel::kMnT, CredibilityLevel::kM1T,
      CredibilityLevel::kEjected};
  for (CredibilityLevel expected : ladder) {
    auto t = w.Token(EditType::kTx, 1, tx_id);
    const uint64_t escrow = w.pts.LedgerSnapshot().Escrowed(t.id());
    const uint64_t before = w.pts.LedgerSnapshot().Balance("watcher");
    AuditRecord r;
    r.modifier = "mod";
    r.reporter = "watcher";
    r.token_id = t.id();
    r.verdict = Verdict::kViolation;
    r.violation = ViolationKind::kOverCount;
    CHECK(auditor.AdjustLevel(r, w.pts) == expected);
    CHECK(w.pts.Level("mod") == expected);
    CHECK(r.settlement.to_reporter + r.settlement.burned == escrow);
    CHECK(r.settlement.to_reporter == escrow / 2);
    CHECK(w.pts.LedgerSnapshot().Balance("watcher") ==
          before + r.settlement.to_reporter);
    CHECK(w.pts.LedgerSnapshot().Escrowed(t.id()) == 0);
    CHECK(w.pts.LedgerSnapshot().Conserved());
  }
  CHECK(CodeOf([&] { w.Token(EditType::kTx, 1, tx_id); }) ==
        ErrorCode::kLevelTooLow);
}

TEST_CASE("clean audits promote and refund") {
  World w(GroupParams::Mock(), 2);
  w.pts.SetLevel("mod", CredibilityLevel::kM1T);
  Auditor auditor;
  const uint64_t tx_id = w.chain.block(1).txs[0].id;
  auto level_after = [&](int clean_audits) {
    CredibilityLevel last = w.pts.Level("mod");
    for (int i = 0; i < clean_audits; ++i) {
      auto t = w.Token(EditType::kTx, 1, tx_id);
      const uint64_t balance = w.pts.LedgerSnapshot().Balance("mod");
      AuditRecord r;
      r.modifier = "mod";
      r.reporter = "watcher";
      r.token_id = t.id();
      last = auditor.AdjustLevel(r, w.pts);
      CHECK(r.settlement.refunded == 1);
      CHECK(w.pts.LedgerSnapshot().Balance("mod") == balance + 1);
    }
    return last;
  };
  CHECK(level_after(4) == CredibilityLevel::kM1T);
  CHECK(auditor.credits("mod") == 4);
  CHECK(level_after(1) == CredibilityLevel::kMnT);
  CHECK(auditor.credits("mod") == 0);
  CHECK(level_after(15) == CredibilityLevel::kMnB);
  CHECK(level_after(10) == CredibilityLevel::kMnB);
  CHECK(w.pts.LedgerSnapshot().Conserved());

  // A violation resets progress toward the next promotion.
  level_after(3);
  AuditRecord bad;
  bad.modifier = "mod";
  bad.reporter = "watcher";
  bad.token_id = "none";
  bad.verdict = Verdict::kViolation;
  bad.violation = ViolationKind::kTokenMisuse;
  auditor.AdjustLevel(bad, w.pts);
  CHECK(auditor.credits("mod") == 0);
  CHECK(w.pts.Level("mod") == CredibilityLevel::kM1B);
}

TEST_CASE("audit record and auditor json") {
  World w(GroupParams::Mock(), 2);
  Case c = HonestTxEdit(w, 1, "json");
  c.new_tuple.sigma = c.new_tuple.sigma + w.params.One();
  Auditor auditor;
  AuditRecord r = c.Run(w.hs);
  r.report_id = "rep-1";
  r.reporter = "watcher";
  r.modifier = "mod";
  r.token_id = c.token.id();
  auditor.AdjustLevel(r, w.pts);
  auto back = AuditRecordFromJson(ToJson(r));
  CHECK(ToJson(back) == ToJson(r));
  CHECK(back.violation == ViolationKind::kBadSignature);

  auto j = ToJson(r);
  j["violation"] = nullptr;
  CHECK(CodeOf([&] { AuditRecordFromJson(j); }) == ErrorCode::kDeserialization);
  j["violation"] = "bribery";
  CHECK(CodeOf([&] { AuditRecordFromJson(j); }) == ErrorCode::kDeserialization);

  auto restored = Auditor::FromJson(auditor.ToJson());
  CHECK(restored.ToJson() == auditor.ToJson());
}

}  // namespace
}  // namespace cdedit::audit
