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

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cdedit/bilinear/group.h"
#include "cdedit/bilinear/hash_suite.h"
#include "cdedit/policy/policy.h"
#include "json.hpp"

// FAME-style ciphertext-policy ABE over monotone span programs, extended
// with an identity binding. It is used only to encapsulate the chameleon
// randomness pair (r, R) under an attribute policy.
namespace cdedit::cpabe {

struct MasterPublicKey {
  G1 g;
  G2 h;
  G2 h_a1;  // h^{a1}
  G2 h_a2;  // h^{a2}
  Gt t1;    // e(g,h)^{d1 a1 + d3}
  Gt t2;    // e(g,h)^{d2 a2 + d3}
  // Identity ladder g_i = g^{z_i}, h_i = h^{z_i}, stored for i = 1..k.
  std::vector<G1> g_ladder;
  std::vector<G2> h_ladder;

  size_t ladder_size() const { return g_ladder.size(); }
};

struct MasterSecretKey {
  Scalar a1, a2, b1, b2;
  G1 g_d1, g_d2, g_d3;
  std::vector<Scalar> z;
};

struct MasterKeys {
  MasterPublicKey mpk;
  MasterSecretKey msk;
};

/// Identity vector (I_1, ..., I_j) over Z_q with its two credentials,
///   in H:  prod_{i=1..j} h * h_{k-i-1}^{I_i}   (binds ciphertexts)
///   in G:  prod_{i=1..j} g * g_{k-i-1}^{I_i}   (embedded in modifier keys)
/// where k is the ladder size. Requires k >= j + 2.
class Identity {
 public:
  Identity() = default;
  explicit Identity(std::vector<Scalar> components)
      : components_(std::move(components)) {}

  static Identity Random(const GroupParams& params, size_t length, Rng& rng);

  const std::vector<Scalar>& components() const { return components_; }
  size_t length() const { return components_.size(); }

  G2 CredentialInH(const MasterPublicKey& mpk) const;
  G1 CredentialInG(const MasterPublicKey& mpk) const;

  friend bool operator==(const Identity&, const Identity&) = default;

 private:
  std::vector<Scalar> components_;
};

struct AttributeComponent {
  G1 k1;  // sk_{y,1}
  G1 k2;  // sk_{y,2}
  G1 k3;  // g^{-sigma_y}
};

struct AttributeKey {
  std::array<G2, 3> sk0;  // h^{b1 r1}, h^{b2 r2}, h^{r1+r2}
  G1 sk0_g_rk;            // g^{R_k}
  std::map<std::string, AttributeComponent> attribute_keys;
  G1 skp1;  // sk'_1
  G1 skp2;  // sk'_2
  G1 g_d3;
  G1 g_neg_sigma;  // g^{-sigma'}
  G1 sk1;          // g^d * level^{r} * g^{R_k}
  // g_{i-1}^r, ..., g_1^r. Stored and serialized, not consumed by any check.
  std::vector<G1> sk2;

  policy::AttributeSet attributes() const;
  // Number of group elements held by the key.
  size_t ComponentCount() const;
};

struct Ciphertext {
  std::array<G2, 3> ct0;  // H1^{s1}, H2^{s2}, h^{s1+s2}
  std::vector<std::array<G1, 3>> rows;
  Bytes masked_r;  // r xor Gk(B)
  Bytes masked_R;  // R xor H2mask(B)
  G2 ct1;          // ID^s
  G2 ct2;          // ID^s
  G2 ct3;          // ct1^s
  policy::Msp policy;
};

struct Payload {
  Scalar r;
  Scalar R;
  friend bool operator==(const Payload&, const Payload&) = default;
};

MasterKeys Setup(const HashSuite& hs, size_t ladder_size, Rng& rng);

AttributeKey KeyGen(const HashSuite& hs, const MasterKeys& keys,
                    const policy::AttributeSet& attributes,
                    const Identity& modifier, Rng& rng);

// Encryption with caller-chosen (s1, s2); the sum s doubles as the one-time
// signing key of the chameleon layer.
Ciphertext EncryptWith(const HashSuite& hs, const MasterPublicKey& mpk,
                       const Payload& payload, const policy::Msp& msp,
                       const G2& binding, const Scalar& s1, const Scalar& s2);

Ciphertext Encrypt(const HashSuite& hs, const MasterPublicKey& mpk,
                   const Payload& payload, const policy::Msp& msp,
                   const G2& binding, Rng& rng);

// The blind T1^{s1} T2^{s2} recovered from the key, or Unauthorized when the
// key's attributes do not satisfy the ciphertext policy.
Gt RecoverBlind(const AttributeKey& key, const Ciphertext& ct);

// Throws Unauthorized, or IntegrityFailure when the unmasked values are not
// canonical scalars.
Payload Decrypt(const HashSuite& hs, const AttributeKey& key,
                const Ciphertext& ct);

nlohmann::json ToJson(const MasterPublicKey& mpk);
MasterPublicKey MasterPublicKeyFromJson(const nlohmann::json& j,
                                        const GroupParams& params);
nlohmann::json ToJson(const MasterSecretKey& msk);
MasterSecretKey MasterSecretKeyFromJson(const nlohmann::json& j,
                                        const GroupParams& params);
nlohmann::json ToJson(const Identity& id);
Identity IdentityFromJson(const nlohmann::json& j, const GroupParams& params);
nlohmann::json ToJson(const AttributeKey& key);
AttributeKey AttributeKeyFromJson(const nlohmann::json& j,
                                  const GroupParams& params);
nlohmann::json ToJson(const Ciphertext& ct);
Ciphertext CiphertextFromJson(const nlohmann::json& j,
                              const GroupParams& params);

}  // namespace cdedit::cpabe
