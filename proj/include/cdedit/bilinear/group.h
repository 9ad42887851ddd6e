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

#include <blst.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "cdedit/bilinear/scalar.h"
#include "cdedit/error.h"

namespace cdedit {

// Two interchangeable instantiations of the asymmetric group triple:
//   kReal  BLS12-381 through blst.
//   kMock  every element is its own discrete logarithm; the pairing is the
//          product of exponents. Transparent, used as a test oracle.
enum class Backend { kReal, kMock };

std::string_view BackendName(Backend backend);
Backend ParseBackend(std::string_view name);

struct G1Ops {
  using Native = blst_p1;
  static constexpr std::string_view kName = "G";
  static constexpr size_t kEncodedSize = 48;
  static Native Identity();
  static bool IsIdentity(const Native& a);
  static Native Mul(const Native& a, const Native& b);
  static Native Inverse(const Native& a);
  static Native Pow(const Native& a, const Scalar& e);
  static bool Equal(const Native& a, const Native& b);
  static Bytes Encode(const Native& a);
  static std::optional<Native> Decode(ByteSpan bytes);
};

struct G2Ops {
  using Native = blst_p2;
  static constexpr std::string_view kName = "H";
  static constexpr size_t kEncodedSize = 96;
  static Native Identity();
  static bool IsIdentity(const Native& a);
  static Native Mul(const Native& a, const Native& b);
  static Native Inverse(const Native& a);
  static Native Pow(const Native& a, const Scalar& e);
  static bool Equal(const Native& a, const Native& b);
  static Bytes Encode(const Native& a);
  static std::optional<Native> Decode(ByteSpan bytes);
};

struct GtOps {
  using Native = blst_fp12;
  static constexpr std::string_view kName = "GT";
  static constexpr size_t kEncodedSize = 576;
  static Native Identity();
  static bool IsIdentity(const Native& a);
  static Native Mul(const Native& a, const Native& b);
  static Native Inverse(const Native& a);
  static Native Pow(const Native& a, const Scalar& e);
  static bool Equal(const Native& a, const Native& b);
  static Bytes Encode(const Native& a);
  static std::optional<Native> Decode(ByteSpan bytes);
};

/// Element of one of the three prime-order groups, written multiplicatively.
template <class Ops>
class GroupElement {
 public:
  using Native = typename Ops::Native;

  GroupElement() = default;
  static GroupElement FromLog(Scalar log) {
    GroupElement e;
    e.rep_ = std::move(log);
    return e;
  }
  static GroupElement FromNative(const Native& n) {
    GroupElement e;
    e.rep_ = n;
    return e;
  }

  bool valid() const { return !std::holds_alternative<std::monostate>(rep_); }
  Backend backend() const {
    CheckValid();
    return std::holds_alternative<Scalar>(rep_) ? Backend::kMock
                                                : Backend::kReal;
  }

  GroupElement& operator*=(const GroupElement& o) {
    CheckCompatible(o);
    if (auto* log = std::get_if<Scalar>(&rep_)) {
      *log += std::get<Scalar>(o.rep_);
    } else {
      rep_ = Ops::Mul(std::get<Native>(rep_), std::get<Native>(o.rep_));
    }
    return *this;
  }
  friend GroupElement operator*(GroupElement a, const GroupElement& b) {
    return a *= b;
  }
  friend GroupElement operator/(GroupElement a, const GroupElement& b) {
    return a *= b.Inverse();
  }

  GroupElement Inverse() const {
    CheckValid();
    if (auto* log = std::get_if<Scalar>(&rep_)) return FromLog(-*log);
    return FromNative(Ops::Inverse(std::get<Native>(rep_)));
  }

  GroupElement Pow(const Scalar& e) const {
    CheckValid();
    if (auto* log = std::get_if<Scalar>(&rep_)) return FromLog(*log * e);
    if (e.IsZero()) return FromNative(Ops::Identity());
    if (e.IsOne()) return *this;
    if (e.IsMinusOne()) return Inverse();
    return FromNative(Ops::Pow(std::get<Native>(rep_), e));
  }

  bool IsIdentity() const {
    CheckValid();
    if (auto* log = std::get_if<Scalar>(&rep_)) return log->IsZero();
    return Ops::IsIdentity(std::get<Native>(rep_));
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    if (!a.valid() || !b.valid()) return a.valid() == b.valid();
    if (a.rep_.index() != b.rep_.index()) return false;
    if (auto* log = std::get_if<Scalar>(&a.rep_)) {
      return *log == std::get<Scalar>(b.rep_);
    }
    return Ops::Equal(std::get<Native>(a.rep_), std::get<Native>(b.rep_));
  }

  Bytes ToBytes() const {
    CheckValid();
    if (auto* log = std::get_if<Scalar>(&rep_)) return log->ToBytes();
    return Ops::Encode(std::get<Native>(rep_));
  }
  std::string ToHex() const { return cdedit::ToHex(ToBytes()); }

  // Discrete logarithm w.r.t. the group generator; mock backend only.
  const Scalar& MockLog() const {
    CDEDIT_ENFORCE(std::holds_alternative<Scalar>(rep_),
                   ErrorCode::kBackendMismatch,
                   "discrete log requested on a non-mock element");
    return std::get<Scalar>(rep_);
  }

  const Native& native() const {
    CDEDIT_ENFORCE(std::holds_alternative<Native>(rep_),
                   ErrorCode::kBackendMismatch,
                   "native handle requested on a mock element");
    return std::get<Native>(rep_);
  }

 private:
  void CheckValid() const {
    CDEDIT_ENFORCE(valid(), ErrorCode::kInvalidArgument,
                   std::string("uninitialized element of ") +
                       std::string(Ops::kName));
  }
  void CheckCompatible(const GroupElement& o) const {
    CheckValid();
    o.CheckValid();
    CDEDIT_ENFORCE(rep_.index() == o.rep_.index(),
                   ErrorCode::kBackendMismatch,
                   "mixing mock and real group elements");
  }

  std::variant<std::monostate, Scalar, Native> rep_;
};

using G1 = GroupElement<G1Ops>;
using G2 = GroupElement<G2Ops>;
using Gt = GroupElement<GtOps>;

/// Public description of one asymmetric bilinear group instantiation:
/// order q, generators g of G and h of H, and gt = e(g, h).
class GroupParams {
 public:
  static constexpr int kDefaultSecurityBits = 96;

  static GroupParams Setup(Backend backend,
                           int security_bits = kDefaultSecurityBits);
  // Mock backend over a caller-supplied prime order (tests use tiny primes).
  static GroupParams Mock(const mpz_class& q);
  static GroupParams Mock();

  Backend backend() const { return backend_; }
  const FieldPtr& field() const { return field_; }
  const mpz_class& order() const { return field_->modulus(); }
  const G1& g() const { return g_; }
  const G2& h() const { return h_; }
  const Gt& gt() const { return gt_; }
  const std::string& curve() const { return curve_; }
  int security_bits() const { return security_bits_; }

  G1 G1Identity() const { return g_.Pow(Zero()); }
  G2 G2Identity() const { return h_.Pow(Zero()); }
  Gt GtIdentity() const { return gt_.Pow(Zero()); }

  Scalar Zero() const { return Scalar::Zero(field_); }
  Scalar One() const { return Scalar::One(field_); }
  Scalar FromInt(long v) const { return Scalar::FromInt(field_, v); }
  Scalar RandomScalar(Rng& rng) const { return Scalar::Random(field_, rng); }
  Scalar RandomNonZero(Rng& rng) const {
    return Scalar::RandomNonZero(field_, rng);
  }

  Scalar DecodeScalar(ByteSpan bytes) const {
    return Scalar::FromBytes(field_, bytes);
  }
  G1 DecodeG1(ByteSpan bytes) const;
  G2 DecodeG2(ByteSpan bytes) const;
  Gt DecodeGt(ByteSpan bytes) const;

  // Hex convenience wrappers used by the JSON codecs.
  Scalar ScalarFromHex(std::string_view hex) const {
    return DecodeScalar(FromHex(hex));
  }
  G1 G1FromHex(std::string_view hex) const { return DecodeG1(FromHex(hex)); }
  G2 G2FromHex(std::string_view hex) const { return DecodeG2(FromHex(hex)); }
  Gt GtFromHex(std::string_view hex) const { return DecodeGt(FromHex(hex)); }

 private:
  GroupParams() = default;

  Backend backend_ = Backend::kMock;
  FieldPtr field_;
  G1 g_;
  G2 h_;
  Gt gt_;
  std::string curve_;
  int security_bits_ = 0;
};

// Order of the BLS12-381 prime-order subgroups.
const mpz_class& Bls12381Order();

Gt Pair(const G1& a, const G2& b);
// Product of pairings, sharing one final exponentiation on the real backend.
Gt MultiPair(std::span<const std::pair<G1, G2>> terms);

extern template class GroupElement<G1Ops>;
extern template class GroupElement<G2Ops>;
extern template class GroupElement<GtOps>;

}  // namespace cdedit
