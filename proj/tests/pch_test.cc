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

#include "cdedit/pch/pch.h"

#include "cdedit/error.h"
#include "doctest.h"
#include "test_util.h"

namespace cdedit::pch {
namespace {

using policy::ParsePolicy;

struct World {
  explicit World(GroupParams p, uint64_t seed = 1)
      : params(std::move(p)), hs(params), rng(seed),
        abe(cpabe::Setup(hs, 8, rng)),
        ch(ChameleonKeys::Generate(params, rng)),
        owner(cpabe::Identity::Random(params, 3, rng)),
        modifier(cpabe::Identity::Random(params, 2, rng)) {}

  EditingKey KeyFor(const policy::AttributeSet& theta) {
    return {ch.x, cpabe::KeyGen(hs, abe, theta, modifier, rng)};
  }
  PchTuple HashOf(std::string_view m, std::string_view policy = "A AND B") {
    return Hash(hs, ch.pk, abe.mpk, AsBytes(m), ParsePolicy(policy), owner,
                rng);
  }

  GroupParams params;
  HashSuite hs;
  Rng rng;
  cpabe::MasterKeys abe;
  ChameleonKeys ch;
  cpabe::Identity owner;
  cpabe::Identity modifier;
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

TEST_CASE("hash verifies on both backends") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    World w(params);
    auto t = w.HashOf("hello");
    CHECK(VerifyDigest(w.hs, t));
    CHECK(VerifySignature(w.hs, t));
    CHECK(Verify(w.hs, t));
    auto u = w.HashOf("hello");
    CHECK(!(u.ch == t.ch));
  }
}

TEST_CASE("mock digest exponent is x r + etd Hmsg(m)") {
  World w(GroupParams::Mock(), 2);
  auto key = w.KeyFor({"A", "B"});
  for (int i = 0; i < 20; ++i) {
    std::string m = "message " + std::to_string(i);
    auto t = w.HashOf(m);
    auto payload = cpabe::Decrypt(w.hs, key.ssk, t.C);
    Scalar etd = w.hs.H2(payload.R.ToBytes());
    CHECK(t.hprime.MockLog() == etd);
    CHECK(t.p.MockLog() == w.ch.x * payload.r);
    CHECK(t.ch.MockLog() == w.ch.x * payload.r + etd * w.hs.Hmsg(AsBytes(m)));
    CHECK(w.ch.pk.MockLog() == w.ch.x);
  }
}

TEST_CASE("verify rejects altered messages and signatures") {
  World w(GroupParams::Mock(), 3);
  auto t = w.HashOf("original");
  auto other = t;
  other.m = ToBytes("changed");
  CHECK(!Verify(w.hs, other));
  CHECK(VerifySignature(w.hs, other));

  auto plus_one = t;
  plus_one.sigma += w.params.One();
  CHECK(!Verify(w.hs, plus_one));
  for (int i = 0; i < 100; ++i) {
    auto bad = t;
    bad.sigma += w.params.RandomNonZero(w.rng);
    CHECK(!VerifySignature(w.hs, bad));
  }
  auto bad_c = t;
  bad_c.c = bad_c.c * w.params.h();
  CHECK(!Verify(w.hs, bad_c));
  auto bad_epk = t;
  bad_epk.epk = bad_epk.epk * w.params.g();
  CHECK(!Verify(w.hs, bad_epk));
}

TEST_CASE("sigma perturbations fail on the real backend") {
  World w(GroupParams::Setup(Backend::kReal), 4);
  auto t = w.HashOf("payload");
  auto bad = t;
  bad.sigma += w.params.One();
  CHECK(!Verify(w.hs, bad));
  auto swapped = t;
  swapped.C.ct3 = swapped.C.ct1;
  CHECK(!Verify(w.hs, swapped));
}

TEST_CASE("adapt with the same message keeps r and p") {
  World w(GroupParams::Mock(), 5);
  auto key = w.KeyFor({"A", "B"});
  auto t = w.HashOf("same");
  auto u = Adapt(w.hs, w.ch.pk, w.abe.mpk, key, t, t.m, w.modifier, w.rng);
  CHECK(u.p == t.p);
  CHECK(cpabe::Decrypt(w.hs, key.ssk, u.C).r ==
        cpabe::Decrypt(w.hs, key.ssk, t.C).r);
  CHECK(Verify(w.hs, u));
}

TEST_CASE("adapt chains keep ch and h' on both backends") {
  for (auto [params, length] :
       {std::pair{GroupParams::Mock(), 32}, {GroupParams::Setup(Backend::kReal), 6}}) {
    World w(params, 6);
    auto key = w.KeyFor({"A", "B", "C"});
    auto t = w.HashOf("v0", "(A AND B) OR D");
    const Bytes ch = t.ch.ToBytes(), hp = t.hprime.ToBytes();
    for (int i = 1; i <= length; ++i) {
      std::string m = "v" + std::to_string(i);
      auto u = Adapt(w.hs, w.ch.pk, w.abe.mpk, key, t, AsBytes(m), w.modifier,
                     w.rng);
      CHECK(u.ch.ToBytes() == ch);
      CHECK(u.hprime.ToBytes() == hp);
      CHECK(u.m == ToBytes(m));
      CHECK(!(u.p == t.p));
      CHECK(Verify(w.hs, u));
      t = std::move(u);
    }
  }
}

TEST_CASE("mock adapt satisfies the collision exponent identity") {
  World w(GroupParams::Mock(), 7);
  auto key = w.KeyFor({"A", "B"});
  auto t = w.HashOf("before");
  auto u = Adapt(w.hs, w.ch.pk, w.abe.mpk, key, t, AsBytes("after"),
                 w.modifier, w.rng);
  auto before = cpabe::Decrypt(w.hs, key.ssk, t.C);
  auto after = cpabe::Decrypt(w.hs, key.ssk, u.C);
  Scalar etd = w.hs.H2(before.R.ToBytes());
  CHECK(after.R == before.R);
  CHECK(w.ch.x * after.r + etd * w.hs.Hmsg(AsBytes("after")) ==
        w.ch.x * before.r + etd * w.hs.Hmsg(AsBytes("before")));

  // vk' is bound to the modifier credential with a fresh s'.
  Scalar cred = w.modifier.CredentialInH(w.abe.mpk).MockLog();
  Scalar s_new = u.C.ct1.MockLog() / cred;
  CHECK(u.C.ct3.MockLog() == cred * s_new * s_new);
  CHECK(u.c.MockLog() == s_new + etd);
  CHECK(u.sigma == u.epk.MockLog() + s_new * Challenge(w.hs, u.epk, u.c));
}

TEST_CASE("wrong long-term trapdoor breaks the collision") {
  World w(GroupParams::Mock(), 8);
  auto key = w.KeyFor({"A", "B"});
  auto t = w.HashOf("m");
  for (int i = 0; i < 100; ++i) {
    EditingKey wrong{w.params.RandomNonZero(w.rng), key.ssk};
    if (wrong.x == w.ch.x) continue;
    auto u = Adapt(w.hs, w.ch.pk, w.abe.mpk, wrong, t, AsBytes("m'"),
                   w.modifier, w.rng);
    CHECK(!Verify(w.hs, u));
  }
}

TEST_CASE("adapt errors") {
  World w(GroupParams::Mock(), 9);
  auto t = w.HashOf("m");
  auto weak = w.KeyFor({"A"});
  CHECK(CodeOf([&] {
          Adapt(w.hs, w.ch.pk, w.abe.mpk, weak, t, AsBytes("x"), w.modifier,
                w.rng);
        }) == ErrorCode::kUnauthorized);

  auto key = w.KeyFor({"A", "B"});
  auto tampered = t;
  tampered.m = ToBytes("forged");
  CHECK(CodeOf([&] {
          Adapt(w.hs, w.ch.pk, w.abe.mpk, key, tampered, AsBytes("x"),
                w.modifier, w.rng);
        }) == ErrorCode::kVerifyFailed);

  // Ciphertext and signature lifted from another hash: both equations hold
  // but the recovered trapdoor belongs to the other tuple.
  auto donor = w.HashOf("other");
  auto spliced = t;
  spliced.C = donor.C;
  spliced.c = donor.c;
  spliced.epk = donor.epk;
  spliced.sigma = donor.sigma;
  REQUIRE(Verify(w.hs, spliced));
  CHECK(CodeOf([&] {
          Adapt(w.hs, w.ch.pk, w.abe.mpk, key, spliced, AsBytes("x"),
                w.modifier, w.rng);
        }) == ErrorCode::kTrapdoorMismatch);
}

TEST_CASE("serialized tuples verify in a fresh context") {
  for (auto backend : {Backend::kMock, Backend::kReal}) {
    auto params = backend == Backend::kMock ? GroupParams::Mock()
                                            : GroupParams::Setup(backend);
    std::string text;
    {
      World w(params, 10);
      auto key = w.KeyFor({"A", "B"});
      auto t = w.HashOf("m");
      auto u = Adapt(w.hs, w.ch.pk, w.abe.mpk, key, t, AsBytes("m2"),
                     w.modifier, w.rng);
      text = ToJson(u).dump();
      auto keys = ChameleonKeysFromJson(ToJson(w.ch), w.params);
      CHECK(keys.x == w.ch.x);
      CHECK(keys.pk == w.ch.pk);
    }
    auto fresh = backend == Backend::kMock ? GroupParams::Mock()
                                           : GroupParams::Setup(backend);
    HashSuite hs(fresh);
    auto back = PchTupleFromJson(nlohmann::json::parse(text), fresh);
    CHECK(Verify(hs, back));
    CHECK(ToJson(back).dump() == text);
  }
}

}  // namespace
}  // namespace cdedit::pch
