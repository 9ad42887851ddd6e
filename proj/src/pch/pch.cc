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

#include <array>

#include "cdedit/error.h"

namespace cdedit::pch {

ChameleonKeys ChameleonKeys::Generate(const GroupParams& params, Rng& rng) {
  Scalar x = params.RandomNonZero(rng);
  G2 pk = params.h().Pow(x);
  return {std::move(x), std::move(pk)};
}

Scalar Challenge(const HashSuite& hs, const G1& epk, const G2& c) {
  FieldWriter w;
  w.Add(epk.ToBytes());
  w.Add(c.ToBytes());
  return hs.H2(w.bytes());
}

namespace {

struct Signed {
  G2 c;
  G1 epk;
  Scalar sigma;
};

// One-time signature with signing key s over c = h^{s + etd}.
Signed Sign(const HashSuite& hs, const Scalar& s, const Scalar& etd,
            Rng& rng) {
  const GroupParams& p = hs.params();
  G2 c = p.h().Pow(s + etd);
  Scalar esk = p.RandomNonZero(rng);
  G1 epk = p.g().Pow(esk);
  Scalar sigma = esk + s * Challenge(hs, epk, c);
  return {std::move(c), std::move(epk), std::move(sigma)};
}

Scalar Etd(const HashSuite& hs, const Scalar& R) { return hs.H2(R.ToBytes()); }

}  // namespace

PchTuple Hash(const HashSuite& hs, const G2& pk,
              const cpabe::MasterPublicKey& mpk, ByteSpan m,
              const policy::AccessTree& policy, const cpabe::Identity& owner,
              Rng& rng) {
  const GroupParams& p = hs.params();
  Scalar r = p.RandomNonZero(rng);
  Scalar R = p.RandomNonZero(rng);
  Scalar etd = Etd(hs, R);

  PchTuple t;
  t.m.assign(m.begin(), m.end());
  t.p = pk.Pow(r);
  t.hprime = p.h().Pow(etd);
  t.ch = t.p * t.hprime.Pow(hs.Hmsg(m));

  Scalar s1 = p.RandomNonZero(rng);
  Scalar s2 = p.RandomNonZero(rng);
  t.C = cpabe::EncryptWith(hs, mpk, {r, R},
                           policy::ToMsp(policy, p.field()),
                           owner.CredentialInH(mpk), s1, s2);
  Signed sig = Sign(hs, s1 + s2, etd, rng);
  t.c = std::move(sig.c);
  t.epk = std::move(sig.epk);
  t.sigma = std::move(sig.sigma);
  return t;
}

bool VerifyDigest(const HashSuite& hs, const PchTuple& t) {
  return t.ch == t.p * t.hprime.Pow(hs.Hmsg(t.m));
}

bool VerifySignature(const HashSuite& hs, const PchTuple& t) {
  const G1& g = hs.params().g();
  Scalar e = Challenge(hs, t.epk, t.c);
  // e(g^sigma, ct2) * e(epk^-1, ct1) * e(g^-e, ct3) == 1
  std::array<std::pair<G1, G2>, 3> terms{
      std::pair{g.Pow(t.sigma), t.C.ct2},
      std::pair{t.epk.Inverse(), t.C.ct1},
      std::pair{g.Pow(-e), t.C.ct3}};
  return MultiPair(terms).IsIdentity();
}

bool Verify(const HashSuite& hs, const PchTuple& t) {
  try {
    return VerifyDigest(hs, t) && VerifySignature(hs, t);
  } catch (const Error&) {
    // Mixed backends or fields inside a parsed tuple.
    return false;
  }
}

PchTuple Adapt(const HashSuite& hs, const G2& pk,
               const cpabe::MasterPublicKey& mpk, const EditingKey& key,
               const PchTuple& tuple, ByteSpan m_new,
               const cpabe::Identity& modifier, Rng& rng) {
  CDEDIT_ENFORCE(Verify(hs, tuple), ErrorCode::kVerifyFailed,
                 "input tuple does not verify");
  const GroupParams& p = hs.params();
  cpabe::Payload payload = cpabe::Decrypt(hs, key.ssk, tuple.C);
  Scalar etd = Etd(hs, payload.R);
  CDEDIT_ENFORCE(p.h().Pow(etd) == tuple.hprime, ErrorCode::kTrapdoorMismatch,
                 "recovered ephemeral trapdoor does not match h'");

  Scalar r_new = payload.r +
                 (hs.Hmsg(tuple.m) - hs.Hmsg(m_new)) * etd * key.x.Inverse();

  PchTuple t;
  t.m.assign(m_new.begin(), m_new.end());
  t.p = pk.Pow(r_new);
  t.hprime = tuple.hprime;
  t.ch = tuple.ch;
  Scalar s1 = p.RandomNonZero(rng);
  Scalar s2 = p.RandomNonZero(rng);
  t.C = cpabe::EncryptWith(hs, mpk, {r_new, payload.R}, tuple.C.policy,
                           modifier.CredentialInH(mpk), s1, s2);
  Signed sig = Sign(hs, s1 + s2, etd, rng);
  t.c = std::move(sig.c);
  t.epk = std::move(sig.epk);
  t.sigma = std::move(sig.sigma);
  return t;
}

nlohmann::json ToJson(const PchTuple& t) {
  return {{"m", ToHex(t.m)},
          {"p", t.p.ToHex()},
          {"hprime", t.hprime.ToHex()},
          {"ch", t.ch.ToHex()},
          {"C", cpabe::ToJson(t.C)},
          {"c", t.c.ToHex()},
          {"epk", t.epk.ToHex()},
          {"sigma", t.sigma.ToHex()}};
}

PchTuple PchTupleFromJson(const nlohmann::json& j, const GroupParams& params) {
  PchTuple t;
  t.m = FromHex(j.at("m").get<std::string>());
  t.p = params.G2FromHex(j.at("p").get<std::string>());
  t.hprime = params.G2FromHex(j.at("hprime").get<std::string>());
  t.ch = params.G2FromHex(j.at("ch").get<std::string>());
  t.C = cpabe::CiphertextFromJson(j.at("C"), params);
  t.c = params.G2FromHex(j.at("c").get<std::string>());
  t.epk = params.G1FromHex(j.at("epk").get<std::string>());
  t.sigma = params.ScalarFromHex(j.at("sigma").get<std::string>());
  return t;
}

nlohmann::json ToJson(const ChameleonKeys& keys) {
  return {{"x", keys.x.ToHex()}, {"pk", keys.pk.ToHex()}};
}

ChameleonKeys ChameleonKeysFromJson(const nlohmann::json& j,
                                    const GroupParams& params) {
  return {params.ScalarFromHex(j.at("x").get<std::string>()),
          params.G2FromHex(j.at("pk").get<std::string>())};
}

}  // namespace cdedit::pch
