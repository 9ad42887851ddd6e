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

#include <functional>
#include <string>
#include <vector>

#include "cdedit/audit/audit.h"
#include "world.h"

namespace cdedit::testing {

// One honest edit made with an n-use token, ready for tampering.
struct AuditCase {
  pch::PchTuple old_tuple;
  pch::PchTuple new_tuple;
  token::PrivilegeToken token;
  std::vector<chain::EditLogEntry> log;

  audit::AuditRecord Run(const HashSuite& hs) const {
    return audit::AuditEdit(hs, old_tuple, new_tuple, token, log);
  }
};

// Edits the mutable transaction of block `height`.
inline AuditCase HonestTxEdit(World& w, uint32_t n, const std::string& payload,
                              uint64_t height = 1) {
  const uint64_t tx_id = w.chain.block(height).txs[0].id;
  auto t = w.Token(EditType::kTx, n, tx_id);
  const auto& e = w.chain.ApplyTxEdit(w.Ctx(t), tx_id, ToBytes(payload));
  return {e.old_tuple, e.new_tuple, t, {e}};
}

using Attack = std::function<void(AuditCase&, Rng&)>;

// Each attack targets exactly one check of the audit.
inline std::vector<Attack> BadCollisionAttacks(const GroupParams& params) {
  auto noise = [params](Rng& rng) {
    return params.h().Pow(params.RandomNonZero(rng));
  };
  return {
      [](AuditCase& c, Rng& rng) { c.new_tuple.m = rng.Draw(12); },
      [=](AuditCase& c, Rng& rng) { c.new_tuple.ch = c.new_tuple.ch * noise(rng); },
      [=](AuditCase& c, Rng& rng) { c.new_tuple.p = c.new_tuple.p * noise(rng); },
      [=](AuditCase& c, Rng& rng) {
        c.old_tuple.hprime = c.old_tuple.hprime * noise(rng);
      },
      [](AuditCase& c, Rng& rng) {
        c.old_tuple.m.push_back(static_cast<uint8_t>(rng.NextU64()));
      },
  };
}

inline std::vector<Attack> BadSignatureAttacks(const GroupParams& params) {
  return {
      [params](AuditCase& c, Rng& rng) {
        c.new_tuple.sigma = c.new_tuple.sigma + params.RandomNonZero(rng);
      },
      [params](AuditCase& c, Rng& rng) {
        c.old_tuple.sigma = c.old_tuple.sigma + params.RandomNonZero(rng);
      },
      [params](AuditCase& c, Rng& rng) {
        c.new_tuple.epk = params.g().Pow(params.RandomNonZero(rng));
      },
      [params](AuditCase& c, Rng& rng) {
        c.new_tuple.c = c.new_tuple.c * params.h().Pow(params.RandomNonZero(rng));
      },
      [](AuditCase& c, Rng&) { c.new_tuple.C = c.old_tuple.C; },
  };
}

// Replays the logged edit until the token's use count is exceeded.
inline void OverCount(AuditCase& c) {
  const uint32_t n = c.token.request.n;
  for (uint32_t k = 0; k < n; ++k) {
    chain::EditLogEntry extra = c.log.front();
    extra.seq += k + 1;
    c.log.push_back(extra);
  }
}

inline std::vector<Attack> TokenMisuseAttacks() {
  using token::CredibilityLevel;
  return {
      [](AuditCase& c, Rng&) { c.log.front().target += 1; },
      [](AuditCase& c, Rng&) { c.log.front().type = EditType::kBl; },
      [](AuditCase& c, Rng&) {
        c.log.front().editor_level = CredibilityLevel::kEjected;
      },
      [](AuditCase& c, Rng&) { c.log.front().editor = "someone else"; },
      [](AuditCase& c, Rng&) {
        chain::EditLogEntry other = c.log.front();
        other.target = 9999;
        c.log.push_back(other);
      },
  };
}

}  // namespace cdedit::testing
