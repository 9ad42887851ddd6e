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

#include "cdedit/bilinear/hash_suite.h"

namespace cdedit {

namespace {

constexpr uint8_t kAttributeInput = 0x01;
constexpr uint8_t kColumnInput = 0x00;

void CheckIndices(int ell, int t) {
  CDEDIT_ENFORCE(ell >= 1 && ell <= 3 && t >= 1 && t <= 2,
                 ErrorCode::kInvalidArgument, "hash index out of range");
}

}  // namespace

Bytes HashSuite::EncodeAttribute(std::string_view attribute, int ell, int t) {
  CheckIndices(ell, t);
  Bytes out{kAttributeInput};
  AppendU32(out, static_cast<uint32_t>(attribute.size()));
  out.insert(out.end(), attribute.begin(), attribute.end());
  out.push_back(static_cast<uint8_t>(ell));
  out.push_back(static_cast<uint8_t>(t));
  return out;
}

Bytes HashSuite::EncodeColumn(uint32_t column, int ell, int t) {
  CheckIndices(ell, t);
  Bytes out{kColumnInput};
  AppendU32(out, column);
  out.push_back(static_cast<uint8_t>(ell));
  out.push_back(static_cast<uint8_t>(t));
  return out;
}

G1 HashSuite::H1(ByteSpan input) const {
  if (params_.backend() == Backend::kMock) {
    return G1::FromLog(ToScalar(kH1Tag, input));
  }
  blst_p1 out;
  blst_hash_to_g1(&out, input.data(), input.size(),
                  reinterpret_cast<const uint8_t*>(kH1Tag.data()),
                  kH1Tag.size(), nullptr, 0);
  return G1::FromNative(out);
}

Scalar HashSuite::ToScalar(std::string_view tag, ByteSpan input) const {
  const FieldPtr& f = params_.field();
  return Scalar::Reduce(f, ExpandMessage(tag, input, f->byte_width() + 16));
}

Bytes HashSuite::Mask(std::string_view tag, const Gt& blind) const {
  return ExpandMessage(tag, blind.ToBytes(), mask_length());
}

}  // namespace cdedit
