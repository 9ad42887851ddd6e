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

#include "cdedit/rng.h"

#include <openssl/rand.h>

#include <algorithm>

#include "cdedit/error.h"

namespace cdedit {

namespace {
constexpr std::string_view kSeedTag = "cdedit/rng/seed";
}

Rng::Rng(uint64_t seed) {
  Bytes s;
  AppendU64(s, seed);
  key_ = Sha256({AsBytes(kSeedTag), s});
}

Rng::Rng(ByteSpan seed) { key_ = Sha256({AsBytes(kSeedTag), seed}); }

Rng Rng::OsSeeded() {
  Bytes seed(32);
  CDEDIT_ENFORCE(RAND_bytes(seed.data(), static_cast<int>(seed.size())) == 1,
                 ErrorCode::kInvalidArgument, "os entropy unavailable");
  return Rng(ByteSpan(seed));
}

void Rng::Refill() {
  Bytes ctr;
  AppendU64(ctr, counter_++);
  block_ = Sha256({key_, ctr});
  used_ = 0;
}

void Rng::Fill(std::span<uint8_t> out) {
  size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) Refill();
    size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::copy_n(block_.begin() + used_, n, out.begin() + pos);
    used_ += n;
    pos += n;
  }
}

Bytes Rng::Draw(size_t n) {
  Bytes out(n);
  Fill(out);
  return out;
}

uint64_t Rng::NextU64() {
  uint8_t buf[8];
  Fill(buf);
  uint64_t v = 0;
  for (uint8_t b : buf) v = (v << 8) | b;
  return v;
}

uint64_t Rng::Below(uint64_t bound) {
  CDEDIT_ENFORCE(bound > 0, ErrorCode::kInvalidArgument, "empty range");
  // Rejection sampling keeps the result unbiased.
  uint64_t limit = max() - max() % bound;
  for (;;) {
    uint64_t v = NextU64();
    if (v < limit) return v % bound;
  }
}

Rng Rng::Fork(std::string_view label) {
  Bytes material = Draw(32);
  material.insert(material.end(), label.begin(), label.end());
  return Rng(ByteSpan(material));
}

}  // namespace cdedit
