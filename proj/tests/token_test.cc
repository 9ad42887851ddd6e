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

#include "cdedit/token/token.h"

#include <atomic>
#include <thread>
#include <vector>

#include "cdedit/error.h"
#include "doctest.h"
#include "token_perturb.h"

namespace cdedit::token {
namespace {

using testing::Perturb;

constexpr Timestamp kNow = 1'700'000'000;

struct Service {
  explicit Service(GroupParams p, uint64_t seed = 1)
      : hs(std::move(p)), rng(seed), pts(Pts::Create(hs, rng)) {
    pts.RegisterRequester("alice", CredibilityLevel::kMnB, 1000);
    pts.RegisterRequester("bob", CredibilityLevel::kM1T, 1000);
  }

  PrivilegeToken Issue(EditType type, uint32_t n, uint64_t index = 0,
                       std::string who = "alice") {
    EditRequest req{type, n, std::move(who), index,
                    pts.config().Cost(type, n)};
    return pts.TkGen(req, kNow, rng);
  }

  HashSuite hs;
  Rng rng;
  Pts pts;
};

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("token kinds and names") {
  CHECK(KindFor(EditType::kTx, 1) == TokenKind::kT1);
  CHECK(KindFor(EditType::kTx, 5) == TokenKind::kTn);
  CHECK(KindFor(EditType::kBl, 1) == TokenKind::kB1);
  CHECK(KindFor(EditType::kBl, 2) == TokenKind::kBn);
  CHECK(TokenKindName(TokenKind::kBn) == "B_ntk");
  CHECK(ParseTokenKind("T_ntk") == TokenKind::kTn);
  CHECK(ParseLevel("m_1B") == CredibilityLevel::kM1B);
  CHECK_THROWS_AS(ParseEditType("block"), Error);
  CHECK(KindCovers(TokenKind::kB1, EditType::kTx));
  CHECK(KindCovers(TokenKind::kBn, EditType::kBl));
  CHECK(!KindCovers(TokenKind::kTn, EditType::kBl));
  CHECK(LevelAllows(CredibilityLevel::kMnT, TokenKind::kT1));
  CHECK(!LevelAllows(CredibilityLevel::kMnT, TokenKind::kB1));
  CHECK(!LevelAllows(CredibilityLevel::kEjected, TokenKind::kT1));
}

TEST_CASE("tkgen examples") {
  Service s(GroupParams::Mock());
  auto t = s.Issue(EditType::kTx, 1, 7);
  CHECK(t.kind == TokenKind::kT1);
  CHECK(t.uses_remaining == 1);
  CHECK(t.expire == kNow + 24 * 3600);
  CHECK(VerifyToken(s.hs, t, s.pts.pk(), kNow));
  CHECK(s.pts.Verify(t, kNow));

  EditRequest short_req{EditType::kBl, 8, "alice", 0, 79};
  CHECK(CodeOf([&] { s.pts.TkGen(short_req, kNow, s.rng); }) ==
        ErrorCode::kInsufficientDeposit);
  short_req.deposit = 80;
  CHECK(s.pts.TkGen(short_req, kNow, s.rng).kind == TokenKind::kBn);

  EditRequest stranger{EditType::kTx, 1, "mallory", 0, 10};
  CHECK(CodeOf([&] { s.pts.TkGen(stranger, kNow, s.rng); }) ==
        ErrorCode::kUnknownRequester);
  CHECK(CodeOf([&] { s.Issue(EditType::kBl, 1, 0, "bob"); }) ==
        ErrorCode::kLevelTooLow);
  CHECK(CodeOf([&] { s.Issue(EditType::kTx, 2, 0, "bob"); }) ==
        ErrorCode::kLevelTooLow);

  s.pts.SetTargetResolver(
      [](EditType, uint64_t index, uint32_t n) { return index + n <= 10; });
  CHECK(CodeOf([&] { s.Issue(EditType::kBl, 4, 8); }) ==
        ErrorCode::kUnknownTarget);
  CHECK(s.Issue(EditType::kBl, 4, 6).kind == TokenKind::kBn);

  EditRequest broke{EditType::kBl, 2, "bob", 0, 5000};
  s.pts.SetLevel("bob", CredibilityLevel::kMnB);
  CHECK(CodeOf([&] { s.pts.TkGen(broke, kNow, s.rng); }) ==
        ErrorCode::kInsufficientDeposit);
}

TEST_CASE("schnorr relation computed two ways on the mock backend") {
  Service s(GroupParams::Mock(), 2);
  for (int i = 0; i < 50; ++i) {
    auto t = s.Issue(EditType::kTx, 1 + i % 3, i);
    Scalar c = TokenChallenge(s.hs, s.pts.pk(), t);
    // (k + y H) g  vs  kg + (y g) H, in exponent form.
    CHECK(t.sigma == t.kg.MockLog() + s.pts.pk().MockLog() * c);
    CHECK(s.pts.pk().MockLog() == s.pts.sk());
  }
}

TEST_CASE("verify_token gates on expiry and uses") {
  Service s(GroupParams::Setup(Backend::kReal), 3);
  auto t = s.Issue(EditType::kTx, 1);
  CHECK(VerifyToken(s.hs, t, s.pts.pk(), t.expire - 1));
  CHECK(!VerifyToken(s.hs, t, s.pts.pk(), t.expire));
  CHECK(!VerifyToken(s.hs, t, s.pts.pk(), t.expire + 100));
  auto spent = t;
  spent.uses_remaining = 0;
  CHECK(!VerifyToken(s.hs, spent, s.pts.pk(), kNow));

  Service other(GroupParams::Setup(Backend::kReal), 4);
  CHECK(!VerifyToken(s.hs, t, other.pts.pk(), kNow));

  s.pts.ConsumeUse(t.id(), kNow);
  CHECK(!s.pts.Verify(t, kNow));
}

TEST_CASE("single-field perturbations never verify") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    Service s(params, 5);
    std::vector<PrivilegeToken> tokens{
        s.Issue(EditType::kTx, 1, 3), s.Issue(EditType::kTx, 4, 9),
        s.Issue(EditType::kBl, 1, 2), s.Issue(EditType::kBl, 6, 0)};
    int accepted = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto& t = tokens[i % tokens.size()];
      REQUIRE(VerifyToken(s.hs, t, s.pts.pk(), kNow));
      if (VerifyToken(s.hs, Perturb(t, s.hs.params(), s.rng), s.pts.pk(),
                      kNow)) {
        ++accepted;
      }
    }
    CHECK(accepted == 0);
  }
}

TEST_CASE("consume_use counts down") {
  Service s(GroupParams::Mock(), 6);
  auto t = s.Issue(EditType::kTx, 3);
  CHECK(s.pts.ConsumeUse(t.id(), kNow) == 2);
  CHECK(s.pts.ConsumeUse(t.id(), kNow) == 1);
  CHECK(s.pts.ConsumeUse(t.id(), kNow) == 0);
  CHECK(CodeOf([&] { s.pts.ConsumeUse(t.id(), kNow); }) ==
        ErrorCode::kExhausted);
  CHECK(s.pts.Token(t.id()).uses_remaining == 0);

  auto fresh = s.Issue(EditType::kTx, 2);
  CHECK(CodeOf([&] { s.pts.ConsumeUse(fresh.id(), fresh.expire); }) ==
        ErrorCode::kExpired);
  CHECK(s.pts.UsesRemaining(fresh.id()) == 2);
  CHECK(CodeOf([&] { s.pts.ConsumeUse("00", kNow); }) ==
        ErrorCode::kUnknownToken);
}

TEST_CASE("concurrent consumes of a one-time token") {
  Service s(GroupParams::Mock(), 7);
  for (int round = 0; round < 20; ++round) {
    auto t = s.Issue(EditType::kTx, 1);
    std::atomic<int> ok{0}, exhausted{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < 16; ++i) {
      threads.emplace_back([&] {
        try {
          s.pts.ConsumeUse(t.id(), kNow);
          ++ok;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kExhausted) ++exhausted;
        }
      });
    }
    for (auto& th : threads) th.join();
    CHECK(ok == 1);
    CHECK(exhausted == 15);
  }
}

TEST_CASE("ledger conservation under random interleavings") {
  Service s(GroupParams::Mock(), 8);
  s.pts.RegisterRequester("carol", CredibilityLevel::kMnB, 500);
  std::vector<std::string> open;
  const std::vector<std::string> people{"alice", "carol"};
  for (int i = 0; i < 300; ++i) {
    switch (s.rng.Below(3)) {
      case 0: {
        auto type = s.rng.Below(2) ? EditType::kTx : EditType::kBl;
        uint32_t n = 1 + static_cast<uint32_t>(s.rng.Below(4));
        EditRequest req{type, n, people[s.rng.Below(2)], 0,
                        s.pts.config().Cost(type, n) + s.rng.Below(5)};
        try {
          open.push_back(s.pts.TkGen(req, kNow, s.rng).id());
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::kInsufficientDeposit);
        }
        break;
      }
      case 1:
        if (!open.empty()) {
          size_t k = s.rng.Below(open.size());
          auto before = s.pts.LedgerSnapshot().Escrowed(open[k]);
          auto settled = s.pts.Slash(open[k], people[s.rng.Below(2)], 50);
          CHECK(settled.to_reporter + settled.burned == before);
          CHECK(settled.burned >= settled.to_reporter);
          open.erase(open.begin() + static_cast<long>(k));
        }
        break;
      default:
        if (!open.empty()) {
          size_t k = s.rng.Below(open.size());
          s.pts.Refund(open[k]);
          open.erase(open.begin() + static_cast<long>(k));
        }
        break;
    }
    auto ledger = s.pts.LedgerSnapshot();
    REQUIRE(ledger.Conserved());
    CHECK(ledger.minted() == 2500);
  }
}

TEST_CASE("token and service json round trip") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    Service s(params, 9);
    auto t = s.Issue(EditType::kBl, 3, 4);
    s.pts.ConsumeUse(t.id(), kNow);
    auto back = TokenFromJson(nlohmann::json::parse(ToJson(t).dump()),
                              s.hs.params());
    CHECK(ToJson(back) == ToJson(t));
    CHECK(VerifyToken(s.hs, back, s.pts.pk(), kNow));

    Pts restored = Pts::FromJson(nlohmann::json::parse(s.pts.ToJson().dump()),
                                 s.hs);
    CHECK(restored.ToJson() == s.pts.ToJson());
    CHECK(restored.UsesRemaining(t.id()) == 2);
    CHECK(restored.Level("bob") == CredibilityLevel::kM1T);

    auto broken = ToJson(t);
    broken.erase("kg");
    CHECK_THROWS_AS(TokenFromJson(broken, s.hs.params()), Error);
  }
}

TEST_CASE("token targets") {
  Service s(GroupParams::Mock(), 10);
  auto tx = s.Issue(EditType::kTx, 2, 42);
  CHECK(tx.Targets(EditType::kTx, 42));
  CHECK(!tx.Targets(EditType::kTx, 43));
  CHECK(!tx.Targets(EditType::kBl, 42));
  auto bl = s.Issue(EditType::kBl, 4, 5);
  for (uint64_t h = 5; h < 9; ++h) CHECK(bl.Targets(EditType::kBl, h));
  CHECK(!bl.Targets(EditType::kBl, 9));
  CHECK(!bl.Targets(EditType::kBl, 4));
  CHECK(bl.Targets(EditType::kTx, 1234, 6));
  CHECK(!bl.Targets(EditType::kTx, 1234, 10));
  CHECK(!bl.Targets(EditType::kTx, 1234));
}

}  // namespace
}  // namespace cdedit::token
