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

#include "cdedit/bytes.h"

#include <openssl/evp.h>

#include <algorithm>

#include "cdedit/error.h"

namespace cdedit {

std::string ToHex(ByteSpan data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes FromHex(std::string_view hex) {
  CDEDIT_ENFORCE(hex.size() % 2 == 0, ErrorCode::kDeserialization,
                 "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = HexValue(hex[2 * i]);
    int lo = HexValue(hex[2 * i + 1]);
    CDEDIT_ENFORCE(hi >= 0 && lo >= 0, ErrorCode::kDeserialization,
                   "invalid hex digit");
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

Bytes Xor(ByteSpan a, ByteSpan b) {
  CDEDIT_ENFORCE(a.size() == b.size(), ErrorCode::kInvalidArgument,
                 "xor operands differ in length");
  Bytes out(a.size());
  std::transform(a.begin(), a.end(), b.begin(), out.begin(),
                 [](uint8_t x, uint8_t y) { return x ^ y; });
  return out;
}

Digest Sha256(std::initializer_list<ByteSpan> parts) {
  Digest out{};
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (ByteSpan part : parts) {
    EVP_DigestUpdate(ctx, part.data(), part.size());
  }
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, out.data(), &len);
  EVP_MD_CTX_free(ctx);
  return out;
}

Digest Sha256(ByteSpan data) { return Sha256({data}); }

Bytes ExpandMessage(std::string_view tag, ByteSpan input, size_t length) {
  Bytes prefix;
  AppendU32(prefix, static_cast<uint32_t>(tag.size()));
  prefix.insert(prefix.end(), tag.begin(), tag.end());

  Bytes out;
  out.reserve(length + 32);
  for (uint32_t counter = 0; out.size() < length; ++counter) {
    Bytes ctr;
    AppendU32(ctr, counter);
    Digest block = Sha256({prefix, ctr, input});
    out.insert(out.end(), block.begin(), block.end());
  }
  out.resize(length);
  return out;
}

void AppendU32(Bytes& out, uint32_t value) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(value >> shift));
  }
}

void AppendU64(Bytes& out, uint64_t value) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(value >> shift));
  }
}

FieldWriter& FieldWriter::Add(ByteSpan field) {
  AppendU32(out_, static_cast<uint32_t>(field.size()));
  out_.insert(out_.end(), field.begin(), field.end());
  return *this;
}

FieldWriter& FieldWriter::AddU64(uint64_t value) {
  Bytes tmp;
  AppendU64(tmp, value);
  return Add(tmp);
}

}  // namespace cdedit
