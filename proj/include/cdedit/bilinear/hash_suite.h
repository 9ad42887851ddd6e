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

#include <cstdint>
#include <string_view>

#include "cdedit/bilinear/group.h"

namespace cdedit {

/// The hash functions of the scheme, each under its own domain tag:
///   H1    bytes -> G        (attribute and column hashes of the ABE)
///   H2    bytes -> Z_q      (ephemeral trapdoor, signature challenges)
///   Hmsg  bytes -> Z_q      (message digest used as chameleon exponent)
///   Gk    GT -> mask        (blinds r inside the ciphertext)
///   H2mask GT -> mask       (blinds R inside the ciphertext)
/// Mask lengths equal the scalar encoding width.
class HashSuite {
 public:
  static constexpr std::string_view kH1Tag = "CDEDIT-V01-H1-G";
  static constexpr std::string_view kH2Tag = "CDEDIT-V01-H2-ZQ";
  static constexpr std::string_view kHmsgTag = "CDEDIT-V01-HMSG-ZQ";
  static constexpr std::string_view kGkTag = "CDEDIT-V01-GK-MASK";
  static constexpr std::string_view kH2MaskTag = "CDEDIT-V01-H2-MASK";

  explicit HashSuite(GroupParams params) : params_(std::move(params)) {}

  const GroupParams& params() const { return params_; }

  G1 H1(ByteSpan input) const;
  G1 H1Attribute(std::string_view attribute, int ell, int t) const {
    return H1(EncodeAttribute(attribute, ell, t));
  }
  G1 H1Column(uint32_t column, int ell, int t) const {
    return H1(EncodeColumn(column, ell, t));
  }

  Scalar H2(ByteSpan input) const { return ToScalar(kH2Tag, input); }
  Scalar Hmsg(ByteSpan input) const { return ToScalar(kHmsgTag, input); }

  Bytes Gk(const Gt& blind) const { return Mask(kGkTag, blind); }
  Bytes H2Mask(const Gt& blind) const { return Mask(kH2MaskTag, blind); }

  size_t mask_length() const { return params_.field()->byte_width(); }

  // Structured H1 inputs. Attribute-derived inputs (x, l, t) and
  // column-derived inputs (v, l, t) start with different type bytes and the
  // attribute is length-prefixed, so the two families never collide.
  static Bytes EncodeAttribute(std::string_view attribute, int ell, int t);
  static Bytes EncodeColumn(uint32_t column, int ell, int t);

 private:
  Scalar ToScalar(std::string_view tag, ByteSpan input) const;
  Bytes Mask(std::string_view tag, const Gt& blind) const;

  GroupParams params_;
};

}  // namespace cdedit
