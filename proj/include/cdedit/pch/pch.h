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

#include "cdedit/bilinear/group.h"
#include "cdedit/bilinear/hash_suite.h"
#include "cdedit/bytes.h"
#include "cdedit/cpabe/cpabe.h"
#include "cdedit/policy/policy.h"
#include "json.hpp"

// Policy-based chameleon hash with an ephemeral trapdoor. A digest
//   ch = pk^r * h'^{Hmsg(m)},  h' = h^{etd},  etd = H2(R)
// can be opened to a new message only by a party holding both the long-term
// trapdoor x (pk = h^x) and an attribute key that decrypts (r, R).
namespace cdedit::pch {

struct ChameleonKeys {
  Scalar x;
  G2 pk;

  static ChameleonKeys Generate(const GroupParams& params, Rng& rng);
};

// Everything a modifier needs to adapt: the long-term trapdoor plus its
// attribute key.
struct EditingKey {
  Scalar x;
  cpabe::AttributeKey ssk;
};

struct PchTuple {
  Bytes m;
  G2 p;
  G2 hprime;
  G2 ch;
  cpabe::Ciphertext C;
  G2 c;  // h^{s + etd}
  G1 epk;
  Scalar sigma;
};

// H2(epk || c), length-prefixed.
Scalar Challenge(const HashSuite& hs, const G1& epk, const G2& c);

PchTuple Hash(const HashSuite& hs, const G2& pk,
              const cpabe::MasterPublicKey& mpk, ByteSpan m,
              const policy::AccessTree& policy, const cpabe::Identity& owner,
              Rng& rng);

// Chameleon equation only.
bool VerifyDigest(const HashSuite& hs, const PchTuple& tuple);
// Signature relation only: e(g,ct2)^sigma = e(epk,ct1) e(g,ct3)^{H2(epk||c)}.
bool VerifySignature(const HashSuite& hs, const PchTuple& tuple);
bool Verify(const HashSuite& hs, const PchTuple& tuple);

// Throws VerifyFailed, Unauthorized, IntegrityFailure or TrapdoorMismatch.
PchTuple Adapt(const HashSuite& hs, const G2& pk,
               const cpabe::MasterPublicKey& mpk, const EditingKey& key,
               const PchTuple& tuple, ByteSpan m_new,
               const cpabe::Identity& modifier, Rng& rng);

nlohmann::json ToJson(const PchTuple& tuple);
PchTuple PchTupleFromJson(const nlohmann::json& j, const GroupParams& params);

nlohmann::json ToJson(const ChameleonKeys& keys);
ChameleonKeys ChameleonKeysFromJson(const nlohmann::json& j,
                                    const GroupParams& params);

}  // namespace cdedit::pch
