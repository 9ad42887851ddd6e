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

#include <utility>

#include "cdedit/error.h"

namespace cdedit::cpabe {

namespace {

constexpr size_t kMinLadder = 3;

size_t LadderIndex(const MasterPublicKey& mpk, size_t length, size_t i) {
  const size_t k = mpk.ladder_size();
  CDEDIT_ENFORCE(length + 2 <= k, ErrorCode::kLadderRange,
                 "identity of length " + std::to_string(length) +
                     " needs a ladder of at least " +
                     std::to_string(length + 2) + ", have " +
                     std::to_string(k));
  return k - i - 1;  // 1-based ladder index, within [k-length-1, k-2]
}

}  // namespace

// ---- identity --------------------------------------------------------------

Identity Identity::Random(const GroupParams& params, size_t length, Rng& rng) {
  std::vector<Scalar> v;
  for (size_t i = 0; i < length; ++i) v.push_back(params.RandomScalar(rng));
  return Identity(std::move(v));
}

G2 Identity::CredentialInH(const MasterPublicKey& mpk) const {
  CDEDIT_ENFORCE(!components_.empty(), ErrorCode::kInvalidArgument,
                 "empty identity");
  G2 out;
  for (size_t i = 1; i <= components_.size(); ++i) {
    size_t idx = LadderIndex(mpk, components_.size(), i);
    G2 factor = mpk.h * mpk.h_ladder[idx - 1].Pow(components_[i - 1]);
    out = out.valid() ? out * factor : factor;
  }
  return out;
}

G1 Identity::CredentialInG(const MasterPublicKey& mpk) const {
  CDEDIT_ENFORCE(!components_.empty(), ErrorCode::kInvalidArgument,
                 "empty identity");
  G1 out;
  for (size_t i = 1; i <= components_.size(); ++i) {
    size_t idx = LadderIndex(mpk, components_.size(), i);
    G1 factor = mpk.g * mpk.g_ladder[idx - 1].Pow(components_[i - 1]);
    out = out.valid() ? out * factor : factor;
  }
  return out;
}

// ---- setup / keygen --------------------------------------------------------

MasterKeys Setup(const HashSuite& hs, size_t ladder_size, Rng& rng) {
  CDEDIT_ENFORCE(ladder_size >= kMinLadder, ErrorCode::kLadderRange,
                 "ladder size must be at least " + std::to_string(kMinLadder));
  const GroupParams& p = hs.params();
  MasterKeys keys;
  MasterSecretKey& msk = keys.msk;
  MasterPublicKey& mpk = keys.mpk;

  msk.a1 = p.RandomNonZero(rng);
  msk.a2 = p.RandomNonZero(rng);
  msk.b1 = p.RandomNonZero(rng);
  msk.b2 = p.RandomNonZero(rng);
  Scalar d1 = p.RandomScalar(rng);
  Scalar d2 = p.RandomScalar(rng);
  Scalar d3 = p.RandomScalar(rng);

  mpk.g = p.g();
  mpk.h = p.h();
  mpk.h_a1 = p.h().Pow(msk.a1);
  mpk.h_a2 = p.h().Pow(msk.a2);
  mpk.t1 = p.gt().Pow(d1 * msk.a1 + d3);
  mpk.t2 = p.gt().Pow(d2 * msk.a2 + d3);
  msk.g_d1 = p.g().Pow(d1);
  msk.g_d2 = p.g().Pow(d2);
  msk.g_d3 = p.g().Pow(d3);

  for (size_t i = 0; i < ladder_size; ++i) {
    Scalar z = p.RandomScalar(rng);
    mpk.g_ladder.push_back(p.g().Pow(z));
    mpk.h_ladder.push_back(p.h().Pow(z));
    msk.z.push_back(std::move(z));
  }
  return keys;
}

policy::AttributeSet AttributeKey::attributes() const {
  policy::AttributeSet out;
  for (const auto& [name, _] : attribute_keys) out.insert(name);
  return out;
}

size_t AttributeKey::ComponentCount() const {
  // sk0 (4) + sk' (4) + sk1 (1) + sk2 + three per attribute.
  return 4 + 4 + 1 + sk2.size() + 3 * attribute_keys.size();
}

AttributeKey KeyGen(const HashSuite& hs, const MasterKeys& keys,
                    const policy::AttributeSet& attributes,
                    const Identity& modifier, Rng& rng) {
  CDEDIT_ENFORCE(!attributes.empty(), ErrorCode::kEmptyAttributeSet,
                 "attribute key needs at least one attribute");
  const GroupParams& p = hs.params();
  const MasterSecretKey& msk = keys.msk;
  const MasterPublicKey& mpk = keys.mpk;

  Scalar r1 = p.RandomNonZero(rng);
  Scalar r2 = p.RandomNonZero(rng);
  Scalar r = r1 + r2;
  Scalar rk = p.RandomScalar(rng);
  const Scalar b1r1 = msk.b1 * r1;
  const Scalar b2r2 = msk.b2 * r2;
  const std::array<Scalar, 2> a_inv{msk.a1.Inverse(), msk.a2.Inverse()};

  AttributeKey key;
  key.sk0 = {p.h().Pow(b1r1), p.h().Pow(b2r2), p.h().Pow(r)};
  key.sk0_g_rk = p.g().Pow(rk);

  // prod_l H(x l t)^{e_l / a_t} * g^{sigma / a_t} for the exponents
  // (e_1, e_2, e_3) = (b1 r1, b2 r2, r1 + r2).
  auto component = [&](auto&& hash, int t, const Scalar& sigma) {
    const Scalar& inv = a_inv[t - 1];
    return hash(1, t).Pow(b1r1 * inv) * hash(2, t).Pow(b2r2 * inv) *
           hash(3, t).Pow(r * inv) * p.g().Pow(sigma * inv);
  };

  for (const auto& y : attributes) {
    Scalar sigma_y = p.RandomScalar(rng);
    auto hash = [&](int ell, int t) { return hs.H1Attribute(y, ell, t); };
    key.attribute_keys[y] = {component(hash, 1, sigma_y),
                             component(hash, 2, sigma_y),
                             p.g().Pow(-sigma_y)};
  }

  Scalar sigma_p = p.RandomScalar(rng);
  auto column1 = [&](int ell, int t) { return hs.H1Column(1, ell, t); };
  key.skp1 = msk.g_d1 * component(column1, 1, sigma_p);
  key.skp2 = msk.g_d2 * component(column1, 2, sigma_p);
  key.g_d3 = msk.g_d3;
  key.g_neg_sigma = p.g().Pow(-sigma_p);

  G1 g_d = msk.g_d1 * msk.g_d2 * msk.g_d3;
  key.sk1 = g_d * modifier.CredentialInG(mpk).Pow(r) * key.sk0_g_rk;
  for (size_t i = modifier.length(); i-- > 1;) {
    key.sk2.push_back(mpk.g_ladder[i - 1].Pow(r));
  }
  return key;
}

// ---- encrypt / decrypt -----------------------------------------------------

Ciphertext EncryptWith(const HashSuite& hs, const MasterPublicKey& mpk,
                       const Payload& payload, const policy::Msp& msp,
                       const G2& binding, const Scalar& s1,
                       const Scalar& s2) {
  CDEDIT_ENFORCE(msp.rows() >= 1, ErrorCode::kEmptyPolicy,
                 "policy without rows");
  const Scalar s = s1 + s2;
  Ciphertext ct;
  ct.ct0 = {mpk.h_a1.Pow(s1), mpk.h_a2.Pow(s2), mpk.h.Pow(s)};

  // Column factors H(0 j l 1)^{s1} H(0 j l 2)^{s2}, j = 1..n2.
  std::vector<std::array<G1, 3>> columns(msp.cols());
  for (size_t j = 0; j < msp.cols(); ++j) {
    bool used = false;
    for (const auto& row : msp.matrix) used = used || !row[j].IsZero();
    if (!used) continue;
    for (int ell = 1; ell <= 3; ++ell) {
      columns[j][ell - 1] =
          hs.H1Column(static_cast<uint32_t>(j + 1), ell, 1).Pow(s1) *
          hs.H1Column(static_cast<uint32_t>(j + 1), ell, 2).Pow(s2);
    }
  }

  ct.rows.reserve(msp.rows());
  for (size_t i = 0; i < msp.rows(); ++i) {
    std::array<G1, 3> row;
    for (int ell = 1; ell <= 3; ++ell) {
      G1 acc = hs.H1Attribute(msp.labels[i], ell, 1).Pow(s1) *
               hs.H1Attribute(msp.labels[i], ell, 2).Pow(s2);
      for (size_t j = 0; j < msp.cols(); ++j) {
        const Scalar& m = msp.matrix[i][j];
        if (!m.IsZero()) acc *= columns[j][ell - 1].Pow(m);
      }
      row[ell - 1] = std::move(acc);
    }
    ct.rows.push_back(std::move(row));
  }

  Gt blind = mpk.t1.Pow(s1) * mpk.t2.Pow(s2);
  ct.masked_r = Xor(payload.r.ToBytes(), hs.Gk(blind));
  ct.masked_R = Xor(payload.R.ToBytes(), hs.H2Mask(blind));
  ct.ct1 = binding.Pow(s);
  ct.ct2 = ct.ct1;
  ct.ct3 = ct.ct1.Pow(s);
  ct.policy = msp;
  return ct;
}

Ciphertext Encrypt(const HashSuite& hs, const MasterPublicKey& mpk,
                   const Payload& payload, const policy::Msp& msp,
                   const G2& binding, Rng& rng) {
  const GroupParams& p = hs.params();
  Scalar s1 = p.RandomNonZero(rng);
  Scalar s2 = p.RandomNonZero(rng);
  return EncryptWith(hs, mpk, payload, msp, binding, s1, s2);
}

Gt RecoverBlind(const AttributeKey& key, const Ciphertext& ct) {
  auto gamma = policy::ReconstructionCoefficients(ct.policy, key.attributes());
  CDEDIT_ENFORCE(gamma.has_value(), ErrorCode::kUnauthorized,
                 "attributes do not satisfy the ciphertext policy");
  CDEDIT_ENFORCE(ct.rows.size() == ct.policy.rows(),
                 ErrorCode::kIntegrityFailure,
                 "ciphertext rows do not match its policy");

  std::array<G1, 3> row_acc;      // prod ct_{i,l}^{gamma_i}
  std::array<G1, 3> key_acc{key.skp1, key.skp2, key.g_d3 * key.g_neg_sigma};
  for (const auto& [i, g] : *gamma) {
    const AttributeComponent& ak = key.attribute_keys.at(ct.policy.labels[i]);
    const std::array<const G1*, 3> kparts{&ak.k1, &ak.k2, &ak.k3};
    for (size_t ell = 0; ell < 3; ++ell) {
      G1 term = ct.rows[i][ell].Pow(g);
      row_acc[ell] = row_acc[ell].valid() ? row_acc[ell] * term : term;
      key_acc[ell] *= kparts[ell]->Pow(g);
    }
  }

  // den / num as one pairing product.
  std::vector<std::pair<G1, G2>> terms;
  for (size_t ell = 0; ell < 3; ++ell) {
    terms.emplace_back(key_acc[ell], ct.ct0[ell]);
    terms.emplace_back(row_acc[ell].Inverse(), key.sk0[ell]);
  }
  return MultiPair(terms);
}

Payload Decrypt(const HashSuite& hs, const AttributeKey& key,
                const Ciphertext& ct) {
  Gt blind = RecoverBlind(key, ct);
  const FieldPtr& field = hs.params().field();
  CDEDIT_ENFORCE(ct.masked_r.size() == hs.mask_length() &&
                     ct.masked_R.size() == hs.mask_length(),
                 ErrorCode::kIntegrityFailure, "masked payload width");
  try {
    return {Scalar::FromBytes(field, Xor(ct.masked_r, hs.Gk(blind))),
            Scalar::FromBytes(field, Xor(ct.masked_R, hs.H2Mask(blind)))};
  } catch (const Error&) {
    throw Error(ErrorCode::kIntegrityFailure,
                "unmasked payload is not a canonical scalar");
  }
}

// ---- JSON ------------------------------------------------------------------

namespace {

template <class E>
nlohmann::json HexList(const std::vector<E>& items) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : items) out.push_back(e.ToHex());
  return out;
}

std::string Str(const nlohmann::json& j, const char* key) {
  return j.at(key).get<std::string>();
}

}  // namespace

nlohmann::json ToJson(const MasterPublicKey& mpk) {
  return {{"g", mpk.g.ToHex()},         {"h", mpk.h.ToHex()},
          {"h_a1", mpk.h_a1.ToHex()},   {"h_a2", mpk.h_a2.ToHex()},
          {"t1", mpk.t1.ToHex()},       {"t2", mpk.t2.ToHex()},
          {"g_ladder", HexList(mpk.g_ladder)},
          {"h_ladder", HexList(mpk.h_ladder)}};
}

MasterPublicKey MasterPublicKeyFromJson(const nlohmann::json& j,
                                        const GroupParams& p) {
  MasterPublicKey mpk;
  mpk.g = p.G1FromHex(Str(j, "g"));
  mpk.h = p.G2FromHex(Str(j, "h"));
  mpk.h_a1 = p.G2FromHex(Str(j, "h_a1"));
  mpk.h_a2 = p.G2FromHex(Str(j, "h_a2"));
  mpk.t1 = p.GtFromHex(Str(j, "t1"));
  mpk.t2 = p.GtFromHex(Str(j, "t2"));
  for (const auto& x : j.at("g_ladder")) {
    mpk.g_ladder.push_back(p.G1FromHex(x.get<std::string>()));
  }
  for (const auto& x : j.at("h_ladder")) {
    mpk.h_ladder.push_back(p.G2FromHex(x.get<std::string>()));
  }
  CDEDIT_ENFORCE(mpk.g_ladder.size() == mpk.h_ladder.size(),
                 ErrorCode::kDeserialization, "ladder halves differ");
  return mpk;
}

nlohmann::json ToJson(const MasterSecretKey& msk) {
  return {{"a1", msk.a1.ToHex()},     {"a2", msk.a2.ToHex()},
          {"b1", msk.b1.ToHex()},     {"b2", msk.b2.ToHex()},
          {"g_d1", msk.g_d1.ToHex()}, {"g_d2", msk.g_d2.ToHex()},
          {"g_d3", msk.g_d3.ToHex()}, {"z", HexList(msk.z)}};
}

MasterSecretKey MasterSecretKeyFromJson(const nlohmann::json& j,
                                        const GroupParams& p) {
  MasterSecretKey msk;
  msk.a1 = p.ScalarFromHex(Str(j, "a1"));
  msk.a2 = p.ScalarFromHex(Str(j, "a2"));
  msk.b1 = p.ScalarFromHex(Str(j, "b1"));
  msk.b2 = p.ScalarFromHex(Str(j, "b2"));
  msk.g_d1 = p.G1FromHex(Str(j, "g_d1"));
  msk.g_d2 = p.G1FromHex(Str(j, "g_d2"));
  msk.g_d3 = p.G1FromHex(Str(j, "g_d3"));
  for (const auto& x : j.at("z")) {
    msk.z.push_back(p.ScalarFromHex(x.get<std::string>()));
  }
  return msk;
}

nlohmann::json ToJson(const Identity& id) { return HexList(id.components()); }

Identity IdentityFromJson(const nlohmann::json& j, const GroupParams& p) {
  std::vector<Scalar> v;
  for (const auto& x : j) v.push_back(p.ScalarFromHex(x.get<std::string>()));
  return Identity(std::move(v));
}

nlohmann::json ToJson(const AttributeKey& key) {
  nlohmann::json attrs = nlohmann::json::object();
  for (const auto& [name, c] : key.attribute_keys) {
    attrs[name] = {c.k1.ToHex(), c.k2.ToHex(), c.k3.ToHex()};
  }
  return {{"sk0", {key.sk0[0].ToHex(), key.sk0[1].ToHex(), key.sk0[2].ToHex(),
                   key.sk0_g_rk.ToHex()}},
          {"attributes", std::move(attrs)},
          {"sk_prime", {key.skp1.ToHex(), key.skp2.ToHex(), key.g_d3.ToHex(),
                        key.g_neg_sigma.ToHex()}},
          {"sk1", key.sk1.ToHex()},
          {"sk2", HexList(key.sk2)}};
}

AttributeKey AttributeKeyFromJson(const nlohmann::json& j,
                                  const GroupParams& p) {
  AttributeKey key;
  const auto& sk0 = j.at("sk0");
  for (size_t i = 0; i < 3; ++i) {
    key.sk0[i] = p.G2FromHex(sk0.at(i).get<std::string>());
  }
  key.sk0_g_rk = p.G1FromHex(sk0.at(3).get<std::string>());
  for (const auto& [name, c] : j.at("attributes").items()) {
    key.attribute_keys[name] = {p.G1FromHex(c.at(0).get<std::string>()),
                                p.G1FromHex(c.at(1).get<std::string>()),
                                p.G1FromHex(c.at(2).get<std::string>())};
  }
  const auto& skp = j.at("sk_prime");
  key.skp1 = p.G1FromHex(skp.at(0).get<std::string>());
  key.skp2 = p.G1FromHex(skp.at(1).get<std::string>());
  key.g_d3 = p.G1FromHex(skp.at(2).get<std::string>());
  key.g_neg_sigma = p.G1FromHex(skp.at(3).get<std::string>());
  key.sk1 = p.G1FromHex(Str(j, "sk1"));
  for (const auto& x : j.at("sk2")) {
    key.sk2.push_back(p.G1FromHex(x.get<std::string>()));
  }
  return key;
}

nlohmann::json ToJson(const Ciphertext& ct) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : ct.rows) {
    rows.push_back({r[0].ToHex(), r[1].ToHex(), r[2].ToHex()});
  }
  return {{"ct0", {ct.ct0[0].ToHex(), ct.ct0[1].ToHex(), ct.ct0[2].ToHex()}},
          {"rows", std::move(rows)},
          {"ct", ToHex(ct.masked_r)},
          {"ct_prime", ToHex(ct.masked_R)},
          {"ct1", ct.ct1.ToHex()},
          {"ct2", ct.ct2.ToHex()},
          {"ct3", ct.ct3.ToHex()},
          {"policy", policy::ToJson(ct.policy)}};
}

Ciphertext CiphertextFromJson(const nlohmann::json& j, const GroupParams& p) {
  Ciphertext ct;
  const auto& ct0 = j.at("ct0");
  for (size_t i = 0; i < 3; ++i) {
    ct.ct0[i] = p.G2FromHex(ct0.at(i).get<std::string>());
  }
  for (const auto& r : j.at("rows")) {
    ct.rows.push_back({p.G1FromHex(r.at(0).get<std::string>()),
                       p.G1FromHex(r.at(1).get<std::string>()),
                       p.G1FromHex(r.at(2).get<std::string>())});
  }
  ct.masked_r = FromHex(Str(j, "ct"));
  ct.masked_R = FromHex(Str(j, "ct_prime"));
  ct.ct1 = p.G2FromHex(Str(j, "ct1"));
  ct.ct2 = p.G2FromHex(Str(j, "ct2"));
  ct.ct3 = p.G2FromHex(Str(j, "ct3"));
  ct.policy = policy::MspFromJson(j.at("policy"), p.field());
  return ct;
}

}  // namespace cdedit::cpabe
