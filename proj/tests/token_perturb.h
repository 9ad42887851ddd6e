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

#include "cdedit/token/token.h"

namespace cdedit::testing {

// One random field of the token changed; every result must be rejected.
inline token::PrivilegeToken Perturb(const token::PrivilegeToken& t,
                                     const GroupParams& params, Rng& rng) {
  using token::EditType;
  using token::Timestamp;
  using token::TokenKind;
  token::PrivilegeToken out = t;
  auto bit = [&](uint64_t v, int width) {
    return v ^ (uint64_t{1} << rng.Below(width));
  };
  switch (rng.Below(10)) {
    case 0: {
      Bytes b = out.sigma.ToBytes();
      b[rng.Below(b.size())] ^= static_cast<uint8_t>(1u << rng.Below(8));
      out.sigma = Scalar::Reduce(params.field(), b);
      if (out.sigma == t.sigma) out.sigma += params.One();
      break;
    }
    case 1:
      out.kg = out.kg * params.g().Pow(params.RandomNonZero(rng));
      break;
    case 2:
      out.request.deposit = bit(out.request.deposit, 16);
      break;
    case 3:
      out.request.index = bit(out.request.index, 32);
      break;
    case 4:
      out.request.requester[rng.Below(out.request.requester.size())] ^=
          static_cast<char>(1u << rng.Below(7));
      break;
    case 5:
      out.time = static_cast<Timestamp>(bit(static_cast<uint64_t>(out.time), 20));
      break;
    case 6:
      out.expire =
          static_cast<Timestamp>(bit(static_cast<uint64_t>(out.expire), 20));
      break;
    case 7:
      out.request.n = static_cast<uint32_t>(bit(out.request.n, 8));
      break;
    case 8:
      out.request.type =
          out.request.type == EditType::kTx ? EditType::kBl : EditType::kTx;
      break;
    default: {
      auto k = static_cast<int>(out.kind);
      out.kind = static_cast<TokenKind>((k + 1 + rng.Below(3)) % 4);
      break;
    }
  }
  return out;
}

}  // namespace cdedit::testing
