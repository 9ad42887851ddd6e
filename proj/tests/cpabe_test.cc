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

#include "cdedit/cpabe/cpabe.h"

#include "cdedit/error.h"
#include "doctest.h"
#include "test_util.h"

namespace cdedit::cpabe {
namespace {

using policy::ParsePolicy;
using policy::ToMsp;

struct Fixture {
  explicit Fixture(GroupParams p, uint64_t seed = 1, size_t ladder = 8)
      : params(std::move(p)), hs(params), rng(seed),
        keys(Setup(hs, ladder, rng)) {}

  Payload RandomPayload() {
    return {params.RandomScalar(rng), params.RandomScalar(rng)};
  }

  GroupParams params;
  HashSuite hs;
  Rng rng;
  MasterKeys keys;
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

TEST_CASE("setup exponents on the mock backend") {
  Fixture f(GroupParams::Mock());
  const auto& msk = f.keys.msk;
  const auto& mpk = f.keys.mpk;
  Scalar d1 = msk.g_d1.MockLog(), d2 = msk.g_d2.MockLog(),
         d3 = msk.g_d3.MockLog();
  CHECK(mpk.t1.MockLog() == d1 * msk.a1 + d3);
  CHECK(mpk.t2.MockLog() == d2 * msk.a2 + d3);
  CHECK(mpk.h_a1.MockLog() == msk.a1);
  CHECK(mpk.h_a2.MockLog() == msk.a2);
  REQUIRE(mpk.ladder_size() == 8);
  for (size_t i = 0; i < 8; ++i) {
    CHECK(mpk.g_ladder[i].MockLog() == msk.z[i]);
    CHECK(mpk.h_ladder[i].MockLog() == msk.z[i]);
  }
  CHECK(CodeOf([&] { Setup(f.hs, 2, f.rng); }) == ErrorCode::kLadderRange);
}

TEST_CASE("identity credentials follow the ladder") {
  Fixture f(GroupParams::Mock(), 2, 6);
  Identity id = Identity::Random(f.params, 4, f.rng);
  const size_t k = f.keys.mpk.ladder_size();
  Scalar expected = f.params.Zero();
  for (size_t i = 1; i <= id.length(); ++i) {
    expected += f.params.One() + f.keys.msk.z[k - i - 2] * id.components()[i - 1];
  }
  CHECK(id.CredentialInH(f.keys.mpk).MockLog() == expected);
  CHECK(id.CredentialInG(f.keys.mpk).MockLog() == expected);

  Identity too_long = Identity::Random(f.params, 5, f.rng);
  CHECK(CodeOf([&] { too_long.CredentialInH(f.keys.mpk); }) ==
        ErrorCode::kLadderRange);
  CHECK(CodeOf([&] { Identity().CredentialInG(f.keys.mpk); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("ciphertext rows have the affine exponent form") {
  Fixture f(GroupParams::Mock(), 3);
  auto msp = ToMsp(ParsePolicy("(A OR B) AND (C AND D)"), f.params.field());
  Identity id = Identity::Random(f.params, 3, f.rng);
  G2 binding = id.CredentialInH(f.keys.mpk);
  Scalar s1 = f.params.RandomNonZero(f.rng), s2 = f.params.RandomNonZero(f.rng);
  Ciphertext ct =
      EncryptWith(f.hs, f.keys.mpk, f.RandomPayload(), msp, binding, s1, s2);

  auto log = [&](const G1& x) { return x.MockLog(); };
  REQUIRE(ct.rows.size() == msp.rows());
  for (size_t i = 0; i < msp.rows(); ++i) {
    for (int ell = 1; ell <= 3; ++ell) {
      Scalar e = log(f.hs.H1Attribute(msp.labels[i], ell, 1)) * s1 +
                 log(f.hs.H1Attribute(msp.labels[i], ell, 2)) * s2;
      for (size_t j = 0; j < msp.cols(); ++j) {
        uint32_t col = static_cast<uint32_t>(j + 1);
        e += msp.matrix[i][j] * (log(f.hs.H1Column(col, ell, 1)) * s1 +
                                 log(f.hs.H1Column(col, ell, 2)) * s2);
      }
      CHECK(ct.rows[i][ell - 1].MockLog() == e);
    }
  }
  Scalar s = s1 + s2;
  CHECK(ct.ct0[0].MockLog() == f.keys.msk.a1 * s1);
  CHECK(ct.ct0[1].MockLog() == f.keys.msk.a2 * s2);
  CHECK(ct.ct0[2].MockLog() == s);
  CHECK(ct.ct1.MockLog() == binding.MockLog() * s);
  CHECK(ct.ct2 == ct.ct1);
  CHECK(ct.ct3.MockLog() == binding.MockLog() * s * s);
}

TEST_CASE("recovered blind equals T1^s1 T2^s2") {
  Fixture f(GroupParams::Mock(), 4);
  const auto& msk = f.keys.msk;
  Identity id = Identity::Random(f.params, 2, f.rng);
  auto key = KeyGen(f.hs, f.keys, {"A", "B", "C"}, id, f.rng);
  auto msp = ToMsp(ParsePolicy("A AND (B OR D) AND C"), f.params.field());
  Scalar s1 = f.params.RandomNonZero(f.rng), s2 = f.params.RandomNonZero(f.rng);
  Ciphertext ct = EncryptWith(f.hs, f.keys.mpk, f.RandomPayload(), msp,
                              id.CredentialInH(f.keys.mpk), s1, s2);
  Scalar expected = msk.g_d1.MockLog() * msk.a1 * s1 +
                    msk.g_d2.MockLog() * msk.a2 * s2 +
                    msk.g_d3.MockLog() * (s1 + s2);
  CHECK(RecoverBlind(key, ct).MockLog() == expected);
}

TEST_CASE("key component count") {
  Fixture f(GroupParams::Mock(), 5);
  auto universe = testing::Universe(100);
  policy::AttributeSet theta(universe.begin(), universe.end());
  Identity id = Identity::Random(f.params, 3, f.rng);
  auto key = KeyGen(f.hs, f.keys, theta, id, f.rng);
  CHECK(key.attribute_keys.size() == 100);
  CHECK(key.sk2.size() == 2);
  CHECK(key.ComponentCount() == 3 * 100 + 9 + 2);
  CHECK(key.attributes() == theta);
  CHECK(key.sk1.MockLog() ==
        f.keys.msk.g_d1.MockLog() + f.keys.msk.g_d2.MockLog() +
            f.keys.msk.g_d3.MockLog() +
            id.CredentialInG(f.keys.mpk).MockLog() * key.sk0[2].MockLog() +
            key.sk0_g_rk.MockLog());
  CHECK(CodeOf([&] { KeyGen(f.hs, f.keys, {}, id, f.rng); }) ==
        ErrorCode::kEmptyAttributeSet);
}

void RoundTrips(GroupParams params, int trees, size_t max_leaves) {
  Fixture f(std::move(params), 6);
  auto universe = testing::Universe(6);
  Identity id = Identity::Random(f.params, 2, f.rng);
  G2 binding = id.CredentialInH(f.keys.mpk);
  for (int i = 0; i < trees; ++i) {
    auto tree = testing::RandomTree(f.rng, 1 + f.rng.Below(max_leaves), universe);
    auto msp = ToMsp(tree, f.params.field());
    Payload payload = f.RandomPayload();
    Ciphertext ct = Encrypt(f.hs, f.keys.mpk, payload, msp, binding, f.rng);

    auto good = testing::SatisfyingSet(f.rng, tree);
    auto key = KeyGen(f.hs, f.keys, good, id, f.rng);
    CHECK(Decrypt(f.hs, key, ct) == payload);

    policy::AttributeSet bad;
    for (const auto& a : universe) {
      bad.insert(a);
      if (tree.Evaluate(bad)) bad.erase(a);
    }
    if (!bad.empty()) {
      auto weak = KeyGen(f.hs, f.keys, bad, id, f.rng);
      CHECK(CodeOf([&] { Decrypt(f.hs, weak, ct); }) ==
            ErrorCode::kUnauthorized);
    }
  }
}

TEST_CASE("encrypt/decrypt round trip on the mock backend") {
  RoundTrips(GroupParams::Mock(), 60, 12);
}

TEST_CASE("encrypt/decrypt round trip on the real backend") {
  RoundTrips(GroupParams::Setup(Backend::kReal), 4, 5);
}

TEST_CASE("keys from another authority do not decrypt") {
  Fixture f(GroupParams::Mock(mpz_class(101)), 7);
  Fixture other(GroupParams::Mock(mpz_class(101)), 8);
  Identity id = Identity::Random(f.params, 2, f.rng);
  auto msp = ToMsp(ParsePolicy("A OR B"), f.params.field());
  int wrong = 0;
  for (int i = 0; i < 50; ++i) {
    Payload payload = f.RandomPayload();
    auto ct = Encrypt(f.hs, f.keys.mpk, payload, msp,
                      id.CredentialInH(f.keys.mpk), f.rng);
    auto key = KeyGen(other.hs, other.keys, {"A"}, id, other.rng);
    try {
      if (!(Decrypt(f.hs, key, ct) == payload)) ++wrong;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kIntegrityFailure);
      ++wrong;
    }
  }
  CHECK(wrong >= 45);
}

TEST_CASE("json round trip") {
  for (auto params : {GroupParams::Mock(), GroupParams::Setup(Backend::kReal)}) {
    Fixture f(params, 9, 5);
    Identity id = Identity::Random(f.params, 2, f.rng);
    auto key = KeyGen(f.hs, f.keys, {"A", "B"}, id, f.rng);
    auto msp = ToMsp(ParsePolicy("A AND B"), f.params.field());
    Payload payload = f.RandomPayload();
    auto ct = Encrypt(f.hs, f.keys.mpk, payload, msp,
                      id.CredentialInH(f.keys.mpk), f.rng);

    auto reparse = [](const nlohmann::json& j) {
      return nlohmann::json::parse(j.dump());
    };
    auto mpk = MasterPublicKeyFromJson(reparse(ToJson(f.keys.mpk)), f.params);
    CHECK(ToJson(mpk) == ToJson(f.keys.mpk));
    auto msk = MasterSecretKeyFromJson(reparse(ToJson(f.keys.msk)), f.params);
    CHECK(ToJson(msk) == ToJson(f.keys.msk));
    CHECK(IdentityFromJson(reparse(ToJson(id)), f.params) == id);
    auto key2 = AttributeKeyFromJson(reparse(ToJson(key)), f.params);
    CHECK(ToJson(key2) == ToJson(key));
    auto ct2 = CiphertextFromJson(reparse(ToJson(ct)), f.params);
    CHECK(ToJson(ct2) == ToJson(ct));
    CHECK(Decrypt(f.hs, key2, ct2) == payload);

    auto broken = ToJson(ct);
    broken["ct1"] = "00";
    CHECK_THROWS_AS(CiphertextFromJson(broken, f.params), Error);
  }
}

}  // namespace
}  // namespace cdedit::cpabe
