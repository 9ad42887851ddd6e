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

#include "cdedit/chain/chain.h"

#include <openssl/sha.h>

#include "cdedit/error.h"
#include "doctest.h"
#include "world.h"

namespace cdedit::chain {
namespace {

using testing::kNow;
using testing::World;
using token::EditType;
using token::Timestamp;

Digest OracleSha(ByteSpan a, ByteSpan b = {}) {
  Bytes joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  Digest d;
  SHA256(joined.data(), joined.size(), d.data());
  return d;
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("merkle examples") {
  Digest a = OracleSha(AsBytes("a")), b = OracleSha(AsBytes("b")),
         c = OracleSha(AsBytes("c"));
  CHECK(MerkleRoot(std::vector<Digest>{a}) == a);
  CHECK(MerkleRoot(std::vector<Digest>{a, b}) == OracleSha(a, b));
  CHECK(MerkleRoot(std::vector<Digest>{a, b, c}) ==
        OracleSha(OracleSha(a, b), OracleSha(c, c)));
  CHECK(CodeOf([] { MerkleRoot(std::vector<Digest>{}); }) ==
        ErrorCode::kEmptyList);
  auto tx = MakeImmutableTx(1, ToBytes("payload"));
  Bytes tagged = ToBytes("tx");
  CHECK(tx.LeafDigest() == OracleSha(tagged, AsBytes("payload")));
}

TEST_CASE("mining difficulty examples") {
  Digest inner = OracleSha(AsBytes("inner"));
  ChainConfig easy{mpz_class(1) << kDigestBits, 1 << 20};
  CHECK(Mine(inner, easy) == 0);
  ChainConfig impossible{mpz_class(0), 4096};
  CHECK(CodeOf([&] { Mine(inner, impossible); }) ==
        ErrorCode::kNonceExhausted);

  ChainConfig medium{mpz_class(1) << (kDigestBits - 8), uint64_t{1} << 20};
  double total = 0;
  for (int i = 0; i < 100; ++i) {
    Digest d = OracleSha(AsBytes("block"), AsBytes(std::to_string(i)));
    uint64_t ctr = Mine(d, medium);
    CHECK(DigestValue(OuterHash(ctr, d)) < medium.difficulty);
    total += static_cast<double>(ctr + 1);
  }
  double mean = total / 100;
  CHECK(mean > 256.0 / 3);
  CHECK(mean < 256.0 * 3);
}

TEST_CASE("mined chain validates and rejects tampering") {
  World w(GroupParams::Mock(), 4);
  CHECK(w.chain.size() == 5);
  CHECK(w.chain.Validate(w.hs));
  for (const auto& b : w.chain.blocks()) {
    CHECK(ValidateBlock(b, w.chain.config(), w.hs));
  }

  Block tampered = w.chain.block(2);
  tampered.txs[1].payload = ToBytes("forged");
  CHECK(!ValidateBlock(tampered, w.chain.config(), w.hs));
  Block retimed = w.chain.block(2);
  retimed.ts += 1;
  CHECK(!ValidateBlock(retimed, w.chain.config(), w.hs));
  Block mutable_retimed = w.chain.block(1);
  mutable_retimed.ts += 1;
  CHECK(!ValidateBlock(mutable_retimed, w.chain.config(), w.hs));

  ChainConfig tight = w.chain.config();
  tight.max_hash_queries = w.chain.block(3).ctr;
  CHECK(!ValidateBlock(w.chain.block(3), tight, w.hs));
}

TEST_CASE("appending preserves the prefix") {
  World w(GroupParams::Mock(), 3);
  auto before = w.chain.ToJson()["blocks"];
  w.chain.MineImmutable({MakeImmutableTx(w.chain.NextTxId(), ToBytes("new"))},
                        kNow + 100);
  auto after = w.chain.ToJson()["blocks"];
  REQUIRE(after.size() == before.size() + 1);
  for (size_t i = 0; i < before.size(); ++i) CHECK(after[i] == before[i]);
  CHECK(w.chain.head().prev == w.chain.block(3).Hash());
  CHECK(w.chain.Validate(w.hs));
}

TEST_CASE("transaction edits keep roots and links") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    World w(params, 4);
    auto links = w.Links();
    const uint64_t target = w.chain.block(2).txs[0].id;
    const Digest root = w.chain.block(2).tx_root;

    auto t1 = w.Token(EditType::kTx, 1, target);
    CHECK(t1.kind == token::TokenKind::kT1);
    const auto& entry = w.chain.ApplyTxEdit(w.Ctx(t1), target, ToBytes("fixed"));
    CHECK(entry.seq == 0);
    CHECK(entry.old_tuple.ch == entry.new_tuple.ch);
    CHECK(w.chain.tx(target).Message() == ToBytes("fixed"));
    CHECK(w.chain.block(2).tx_root == root);
    CHECK(w.Links() == links);
    CHECK(w.chain.Validate(w.hs));
    CHECK(w.pts.UsesRemaining(t1.id()) == 0);
    CHECK(CodeOf([&] {
            w.chain.ApplyTxEdit(w.Ctx(t1), target, ToBytes("again"));
          }) == ErrorCode::kExhausted);

    // A block token covering the enclosing block also authorizes it.
    auto b1 = w.Token(EditType::kBl, 1, 2);
    w.chain.ApplyTxEdit(w.Ctx(b1), target, ToBytes("fixed by block token"));
    CHECK(w.chain.Validate(w.hs));
    CHECK(w.Links() == links);
  }
}

TEST_CASE("transaction edit errors") {
  World w(GroupParams::Mock(), 2);
  const uint64_t mut = w.chain.block(1).txs[0].id;
  const uint64_t imm = w.chain.block(1).txs[1].id;

  auto t_imm = w.Token(EditType::kTx, 1, imm);
  CHECK(CodeOf([&] { w.chain.ApplyTxEdit(w.Ctx(t_imm), imm, ToBytes("x")); }) ==
        ErrorCode::kImmutableTarget);

  auto t_other = w.Token(EditType::kTx, 1, mut);
  CHECK(CodeOf([&] {
          w.chain.ApplyTxEdit(w.Ctx(t_other), w.chain.block(2).txs[0].id,
                              ToBytes("x"));
        }) == ErrorCode::kTargetMismatch);

  auto weak_key = pch::EditingKey{
      w.ch.x, cpabe::KeyGen(w.hs, w.abe, {"org"}, w.modifier, w.rng)};
  EditContext weak{w.ctx, w.pts, t_other, weak_key, w.modifier,
                   "mod", kNow + 1, w.rng};
  CHECK(CodeOf([&] { w.chain.ApplyTxEdit(weak, mut, ToBytes("x")); }) ==
        ErrorCode::kUnauthorized);
  CHECK(w.pts.UsesRemaining(t_other.id()) == 1);

  EditContext late = w.Ctx(t_other);
  late.now = t_other.expire;
  CHECK(CodeOf([&] { w.chain.ApplyTxEdit(late, mut, ToBytes("x")); }) ==
        ErrorCode::kExpired);

  EditContext stolen = w.Ctx(t_other);
  stolen.editor = "someone";
  CHECK(CodeOf([&] { w.chain.ApplyTxEdit(stolen, mut, ToBytes("x")); }) ==
        ErrorCode::kInvalidToken);

  auto forged = t_other;
  forged.sigma += w.params.One();
  CHECK(CodeOf([&] { w.chain.ApplyTxEdit(w.Ctx(forged), mut, ToBytes("x")); }) ==
        ErrorCode::kInvalidToken);

  CHECK(CodeOf([&] { w.chain.ApplyTxEdit(w.Ctx(t_other), 999, ToBytes("x")); }) ==
        ErrorCode::kUnknownTarget);
  CHECK(w.chain.log().empty());
  CHECK(w.chain.Validate(w.hs));
}

TEST_CASE("block edits keep successor links") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    World w(params, 4);
    auto links = w.Links();
    const Block& original = w.chain.block(3);
    std::vector<Transaction> txs = original.txs;
    txs[1] = MakeImmutableTx(txs[1].id, ToBytes("replaced"));
    const Digest old_root = original.tx_root;

    auto b1 = w.Token(EditType::kBl, 1, 3);
    const auto& e = w.chain.ApplyBlEdit(w.Ctx(b1), 3, txs);
    CHECK(e.type == EditType::kBl);
    CHECK(w.chain.block(3).tx_root != old_root);
    CHECK(w.chain.block(3).txs[1].payload == ToBytes("replaced"));
    CHECK(w.Links() == links);
    CHECK(w.chain.Validate(w.hs));

    auto tx_token = w.Token(EditType::kTx, 1, txs[0].id);
    CHECK(CodeOf([&] { w.chain.ApplyBlEdit(w.Ctx(tx_token), 3, txs); }) ==
          ErrorCode::kTokenKindMismatch);
    auto b_imm = w.Token(EditType::kBl, 1, 2);
    CHECK(CodeOf([&] {
            w.chain.ApplyBlEdit(w.Ctx(b_imm), 2, w.chain.block(2).txs);
          }) == ErrorCode::kImmutableTarget);
    CHECK(CodeOf([&] { w.chain.ApplyBlEdit(w.Ctx(b_imm), 3, txs); }) ==
          ErrorCode::kTargetMismatch);
  }
}

TEST_CASE("n-times block token across four blocks") {
  World w(GroupParams::Mock(), 8);
  // Heights 1, 3, 5, 7 are mutable; a 7-block range covers four of them.
  auto links = w.Links();
  auto bn = w.Token(EditType::kBl, 7, 1);
  CHECK(bn.kind == token::TokenKind::kBn);
  uint32_t edits = 0;
  for (uint64_t h = 1; h <= 7; h += 2) {
    auto txs = w.chain.block(h).txs;
    txs.push_back(MakeImmutableTx(w.chain.NextTxId(), ToBytes("appended")));
    w.chain.ApplyBlEdit(w.Ctx(bn), h, txs);
    ++edits;
    CHECK(w.chain.Validate(w.hs));
  }
  CHECK(edits == 4);
  CHECK(w.chain.log().size() == 4);
  CHECK(w.pts.UsesRemaining(bn.id()) == 3);

  auto b4 = w.Token(EditType::kBl, 4, 1);
  for (uint64_t h : {1, 3, 1, 3}) {
    w.chain.ApplyBlEdit(w.Ctx(b4), h, w.chain.block(h).txs);
  }
  CHECK(w.pts.UsesRemaining(b4.id()) == 0);
  CHECK(w.chain.log().size() == 8);
  CHECK(w.Links() == links);
  CHECK(w.chain.ValidateLog());
}

TEST_CASE("chain json persistence") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    World w(params, 3);
    auto t = w.Token(EditType::kTx, 1, w.chain.block(1).txs[0].id);
    w.chain.ApplyTxEdit(w.Ctx(t), t.request.index, ToBytes("edited"));
    std::string text = w.chain.ToJson().dump();
    Chain back = Chain::FromJson(nlohmann::json::parse(text), w.params);
    CHECK(back.ToJson().dump() == text);
    CHECK(back.Validate(w.hs));
    CHECK(back.log().size() == 1);

    auto j = nlohmann::json::parse(text);
    j["log"][0]["editor"] = "someone else";
    Chain forged_log = Chain::FromJson(j, w.params);
    CHECK(!forged_log.ValidateLog());
    CHECK(!forged_log.Validate(w.hs));

    auto k = nlohmann::json::parse(text);
    k["blocks"][2]["prev"] = std::string(64, '0');
    CHECK(!Chain::FromJson(k, w.params).ValidateLinks());
    CHECK_THROWS_AS(Chain::FromJson(nlohmann::json::object(), w.params), Error);
  }
}

}  // namespace
}  // namespace cdedit::chain
