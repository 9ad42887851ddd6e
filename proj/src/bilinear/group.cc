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

#include "cdedit/bilinear/group.h"

#include <array>
#include <cstring>

namespace cdedit {

template class GroupElement<G1Ops>;
template class GroupElement<G2Ops>;
template class GroupElement<GtOps>;

namespace {

// Estimated after the TNFS improvements.
constexpr int kBls12381SecurityBits = 117;
constexpr int kMaxSecurityBits = kBls12381SecurityBits;

size_t BitLength(const Scalar& e) {
  return mpz_sizeinbase(e.value().get_mpz_t(), 2);
}

}  // namespace

std::string_view BackendName(Backend backend) {
  return backend == Backend::kReal ? "real" : "mock";
}

Backend ParseBackend(std::string_view name) {
  if (name == "real") return Backend::kReal;
  if (name == "mock") return Backend::kMock;
  throw Error(ErrorCode::kUnknownBackend, std::string(name));
}

const mpz_class& Bls12381Order() {
  static const mpz_class kOrder(
      "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001", 16);
  return kOrder;
}

// ---- G ---------------------------------------------------------------------

blst_p1 G1Ops::Identity() {
  blst_p1 out;
  std::memset(&out, 0, sizeof(out));
  return out;
}

bool G1Ops::IsIdentity(const blst_p1& a) { return blst_p1_is_inf(&a); }

blst_p1 G1Ops::Mul(const blst_p1& a, const blst_p1& b) {
  blst_p1 out;
  blst_p1_add_or_double(&out, &a, &b);
  return out;
}

blst_p1 G1Ops::Inverse(const blst_p1& a) {
  blst_p1 out = a;
  blst_p1_cneg(&out, true);
  return out;
}

blst_p1 G1Ops::Pow(const blst_p1& a, const Scalar& e) {
  Bytes le = e.ToLittleEndian();
  blst_p1 out;
  blst_p1_mult(&out, &a, le.data(), BitLength(e));
  return out;
}

bool G1Ops::Equal(const blst_p1& a, const blst_p1& b) {
  return blst_p1_is_equal(&a, &b);
}

Bytes G1Ops::Encode(const blst_p1& a) {
  Bytes out(kEncodedSize);
  blst_p1_compress(out.data(), &a);
  return out;
}

std::optional<blst_p1> G1Ops::Decode(ByteSpan bytes) {
  if (bytes.size() != kEncodedSize) return std::nullopt;
  blst_p1_affine affine;
  if (blst_p1_uncompress(&affine, bytes.data()) != BLST_SUCCESS) {
    return std::nullopt;
  }
  if (!blst_p1_affine_in_g1(&affine)) return std::nullopt;
  blst_p1 out;
  blst_p1_from_affine(&out, &affine);
  return out;
}

// ---- H ---------------------------------------------------------------------

blst_p2 G2Ops::Identity() {
  blst_p2 out;
  std::memset(&out, 0, sizeof(out));
  return out;
}

bool G2Ops::IsIdentity(const blst_p2& a) { return blst_p2_is_inf(&a); }

blst_p2 G2Ops::Mul(const blst_p2& a, const blst_p2& b) {
  blst_p2 out;
  blst_p2_add_or_double(&out, &a, &b);
  return out;
}

blst_p2 G2Ops::Inverse(const blst_p2& a) {
  blst_p2 out = a;
  blst_p2_cneg(&out, true);
  return out;
}

blst_p2 G2Ops::Pow(const blst_p2& a, const Scalar& e) {
  Bytes le = e.ToLittleEndian();
  blst_p2 out;
  blst_p2_mult(&out, &a, le.data(), BitLength(e));
  return out;
}

bool G2Ops::Equal(const blst_p2& a, const blst_p2& b) {
  return blst_p2_is_equal(&a, &b);
}

Bytes G2Ops::Encode(const blst_p2& a) {
  Bytes out(kEncodedSize);
  blst_p2_compress(out.data(), &a);
  return out;
}

std::optional<blst_p2> G2Ops::Decode(ByteSpan bytes) {
  if (bytes.size() != kEncodedSize) return std::nullopt;
  blst_p2_affine affine;
  if (blst_p2_uncompress(&affine, bytes.data()) != BLST_SUCCESS) {
    return std::nullopt;
  }
  if (!blst_p2_affine_in_g2(&affine)) return std::nullopt;
  blst_p2 out;
  blst_p2_from_affine(&out, &affine);
  return out;
}

// ---- GT --------------------------------------------------------------------

blst_fp12 GtOps::Identity() { return *blst_fp12_one(); }

bool GtOps::IsIdentity(const blst_fp12& a) { return blst_fp12_is_one(&a); }

blst_fp12 GtOps::Mul(const blst_fp12& a, const blst_fp12& b) {
  blst_fp12 out;
  blst_fp12_mul(&out, &a, &b);
  return out;
}

blst_fp12 GtOps::Inverse(const blst_fp12& a) {
  blst_fp12 out;
  blst_fp12_inverse(&out, &a);
  return out;
}

// Fixed 4-bit window. All GT elements live in the cyclotomic subgroup, so
// the cheaper cyclotomic squaring applies.
blst_fp12 GtOps::Pow(const blst_fp12& a, const Scalar& e) {
  std::array<blst_fp12, 16> table;
  table[0] = *blst_fp12_one();
  table[1] = a;
  for (size_t i = 2; i < table.size(); ++i) {
    blst_fp12_mul(&table[i], &table[i - 1], &a);
  }
  Bytes be = e.ToBytes();
  blst_fp12 acc = *blst_fp12_one();
  bool started = false;
  for (uint8_t byte : be) {
    for (int half = 1; half >= 0; --half) {
      unsigned nibble = (byte >> (4 * half)) & 0xf;
      if (started) {
        for (int k = 0; k < 4; ++k) blst_fp12_cyclotomic_sqr(&acc, &acc);
      }
      if (nibble != 0) {
        blst_fp12_mul(&acc, &acc, &table[nibble]);
        started = true;
      }
    }
  }
  return acc;
}

bool GtOps::Equal(const blst_fp12& a, const blst_fp12& b) {
  return blst_fp12_is_equal(&a, &b);
}

Bytes GtOps::Encode(const blst_fp12& a) {
  Bytes out(kEncodedSize);
  uint8_t* p = out.data();
  for (const auto& f6 : a.fp6) {
    for (const auto& f2 : f6.fp2) {
      for (const auto& f : f2.fp) {
        blst_bendian_from_fp(p, &f);
        p += 48;
      }
    }
  }
  return out;
}

std::optional<blst_fp12> GtOps::Decode(ByteSpan bytes) {
  if (bytes.size() != kEncodedSize) return std::nullopt;
  blst_fp12 out;
  const uint8_t* p = bytes.data();
  for (auto& f6 : out.fp6) {
    for (auto& f2 : f6.fp2) {
      for (auto& f : f2.fp) {
        blst_fp_from_bendian(&f, p);
        p += 48;
      }
    }
  }
  // Reject non-canonical field encodings and elements outside GT.
  if (Encode(out) != Bytes(bytes.begin(), bytes.end())) return std::nullopt;
  if (!blst_fp12_in_group(&out)) return std::nullopt;
  return out;
}

// ---- params ----------------------------------------------------------------

GroupParams GroupParams::Setup(Backend backend, int security_bits) {
  CDEDIT_ENFORCE(security_bits > 0 && security_bits <= kMaxSecurityBits,
                 ErrorCode::kUnsupportedSecurityLevel,
                 "security level " + std::to_string(security_bits) +
                     " not offered (max " + std::to_string(kMaxSecurityBits) +
                     ")");
  if (backend == Backend::kMock) return Mock();

  GroupParams p;
  p.backend_ = Backend::kReal;
  p.field_ = MakeField(Bls12381Order());
  p.g_ = G1::FromNative(*blst_p1_generator());
  p.h_ = G2::FromNative(*blst_p2_generator());
  p.gt_ = Pair(p.g_, p.h_);
  p.curve_ = "BLS12-381";
  p.security_bits_ = kBls12381SecurityBits;
  return p;
}

GroupParams GroupParams::Mock(const mpz_class& q) {
  CDEDIT_ENFORCE(q >= 5 && mpz_probab_prime_p(q.get_mpz_t(), 40) > 0,
                 ErrorCode::kInvalidArgument,
                 "mock group order must be a prime >= 5");
  GroupParams p;
  p.backend_ = Backend::kMock;
  p.field_ = MakeField(q);
  p.g_ = G1::FromLog(Scalar::One(p.field_));
  p.h_ = G2::FromLog(Scalar::One(p.field_));
  p.gt_ = Gt::FromLog(Scalar::One(p.field_));
  p.curve_ = "mock-exponent";
  p.security_bits_ = 0;
  return p;
}

GroupParams GroupParams::Mock() { return Mock(Bls12381Order()); }

G1 GroupParams::DecodeG1(ByteSpan bytes) const {
  if (backend_ == Backend::kMock) return G1::FromLog(DecodeScalar(bytes));
  auto n = G1Ops::Decode(bytes);
  CDEDIT_ENFORCE(n.has_value(), ErrorCode::kDeserialization,
                 "invalid encoding of an element of G");
  return G1::FromNative(*n);
}

G2 GroupParams::DecodeG2(ByteSpan bytes) const {
  if (backend_ == Backend::kMock) return G2::FromLog(DecodeScalar(bytes));
  auto n = G2Ops::Decode(bytes);
  CDEDIT_ENFORCE(n.has_value(), ErrorCode::kDeserialization,
                 "invalid encoding of an element of H");
  return G2::FromNative(*n);
}

Gt GroupParams::DecodeGt(ByteSpan bytes) const {
  if (backend_ == Backend::kMock) return Gt::FromLog(DecodeScalar(bytes));
  auto n = GtOps::Decode(bytes);
  CDEDIT_ENFORCE(n.has_value(), ErrorCode::kDeserialization,
                 "invalid encoding of an element of GT");
  return Gt::FromNative(*n);
}

// ---- pairing ---------------------------------------------------------------

Gt Pair(const G1& a, const G2& b) {
  std::pair<G1, G2> term{a, b};
  return MultiPair({&term, 1});
}

Gt MultiPair(std::span<const std::pair<G1, G2>> terms) {
  CDEDIT_ENFORCE(!terms.empty(), ErrorCode::kInvalidArgument,
                 "empty pairing product");
  if (terms.front().first.backend() == Backend::kMock) {
    Scalar acc = Scalar::Zero(terms.front().first.MockLog().field());
    for (const auto& [a, b] : terms) acc += a.MockLog() * b.MockLog();
    return Gt::FromLog(acc);
  }
  blst_fp12 acc = *blst_fp12_one();
  for (const auto& [a, b] : terms) {
    if (a.IsIdentity() || b.IsIdentity()) continue;
    blst_p1_affine pa;
    blst_p2_affine pb;
    blst_p1_to_affine(&pa, &a.native());
    blst_p2_to_affine(&pb, &b.native());
    blst_fp12 ml;
    blst_miller_loop(&ml, &pb, &pa);
    blst_fp12_mul(&acc, &acc, &ml);
  }
  blst_fp12 out;
  blst_final_exp(&out, &acc);
  return Gt::FromNative(out);
}

}  // namespace cdedit
