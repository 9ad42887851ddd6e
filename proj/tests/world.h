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

#include <string>
#include <utility>
#include <vector>

#include "cdedit/chain/chain.h"
#include "cdedit/policy/policy.h"

namespace cdedit::testing {

using chain::Chain;
using chain::EditContext;
using chain::MakeImmutableTx;
using chain::MakeMutableTx;
using chain::PchContext;
using chain::Transaction;
using token::EditType;
using token::Timestamp;

constexpr Timestamp kNow = 1'700'000'000;

// Authorities, one owner and one modifier, and a chain with a mix of blocks:
// heights 1..blocks alternate mutable (odd) and immutable (even); each block
// holds one mutable and one immutable transaction.
struct World {
  explicit World(GroupParams p, size_t blocks = 6, uint64_t seed = 1)
      : params(std::move(p)),
        hs(params),
        rng(seed),
        abe(cpabe::Setup(hs, 6, rng)),
        ch(pch::ChameleonKeys::Generate(params, rng)),
        owner(cpabe::Identity::Random(params, 2, rng)),
        modifier(cpabe::Identity::Random(params, 2, rng)),
        ctx{hs, ch.pk, abe.mpk},
        pts(token::Pts::Create(hs, rng)),
        chain(Chain::Create({}, kNow)),
        policy(policy::ParsePolicy("(org AND editor) OR root")) {
    key = {ch.x, cpabe::KeyGen(hs, abe, {"org", "editor"}, modifier, rng)};
    pts.RegisterRequester("mod", token::CredibilityLevel::kMnB, 100000);
    pts.SetTargetResolver([this](EditType t, uint64_t i, uint32_t n) {
      return chain.ResolveTarget(t, i, n);
    });
    for (size_t h = 1; h <= blocks; ++h) {
      std::vector<Transaction> txs{
          MakeMutableTx(chain.NextTxId(), ToBytes("mut " + std::to_string(h)),
                        ctx, policy, owner, rng),
          MakeImmutableTx(chain.NextTxId(),
                          ToBytes("imm " + std::to_string(h)))};
      if (h % 2 == 1) {
        chain.MineMutable(std::move(txs), kNow + static_cast<int64_t>(h), ctx,
                          policy, owner, rng);
      } else {
        chain.MineImmutable(std::move(txs), kNow + static_cast<int64_t>(h));
      }
    }
  }

  token::PrivilegeToken Token(EditType type, uint32_t n, uint64_t index) {
    return pts.TkGen({type, n, "mod", index, pts.config().Cost(type, n)}, kNow,
                     rng);
  }
  EditContext Ctx(const token::PrivilegeToken& t) {
    return {ctx, pts, t, key, modifier, "mod", kNow + 60, rng};
  }
  std::vector<Digest> Links() const {
    std::vector<Digest> out;
    for (const auto& b : chain.blocks()) out.push_back(b.prev);
    return out;
  }

  GroupParams params;
  HashSuite hs;
  Rng rng;
  cpabe::MasterKeys abe;
  pch::ChameleonKeys ch;
  cpabe::Identity owner;
  cpabe::Identity modifier;
  PchContext ctx;
  token::Pts pts;
  Chain chain;
  policy::AccessTree policy;
  pch::EditingKey key;
};

}  // namespace cdedit::testing
