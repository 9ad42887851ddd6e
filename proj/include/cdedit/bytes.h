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
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdedit {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;
using Digest = std::array<uint8_t, 32>;

std::string ToHex(ByteSpan data);
Bytes FromHex(std::string_view hex);

inline ByteSpan AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline Bytes ToBytes(std::string_view s) {
  auto span = AsBytes(s);
  return {span.begin(), span.end()};
}

// XOR of two equal-length buffers.
Bytes Xor(ByteSpan a, ByteSpan b);

Digest Sha256(ByteSpan data);
Digest Sha256(std::initializer_list<ByteSpan> parts);

// Counter-mode SHA-256 expansion of (tag, input) to `length` bytes.
Bytes ExpandMessage(std::string_view tag, ByteSpan input, size_t length);

// Builds unambiguous multi-field hash inputs: every field is prefixed with
// its 32-bit big-endian length.
class FieldWriter {
 public:
  FieldWriter& Add(ByteSpan field);
  FieldWriter& Add(std::string_view field) { return Add(AsBytes(field)); }
  FieldWriter& AddU64(uint64_t value);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

void AppendU32(Bytes& out, uint32_t value);
void AppendU64(Bytes& out, uint64_t value);

}  // namespace cdedit
