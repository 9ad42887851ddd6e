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

#include <gmpxx.h>

#include <memory>
#include <string>

#include "cdedit/bytes.h"
#include "cdedit/rng.h"

namespace cdedit {

/// Prime field Z_q shared by every scalar of one group instantiation.
class ScalarField {
 public:
  explicit ScalarField(mpz_class modulus);

  const mpz_class& modulus() const { return modulus_; }
  // Width of the canonical fixed-length big-endian encoding.
  size_t byte_width() const { return byte_width_; }
  size_t bit_length() const { return bit_length_; }

 private:
  mpz_class modulus_;
  size_t byte_width_;
  size_t bit_length_;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

FieldPtr MakeField(const mpz_class& modulus);

/// Element of Z_q, always held as the canonical representative in [0, q).
class Scalar {
 public:
  Scalar() = default;
  Scalar(FieldPtr field, mpz_class value);

  static Scalar Zero(FieldPtr field) { return {std::move(field), 0}; }
  static Scalar One(FieldPtr field) { return {std::move(field), 1}; }
  static Scalar FromInt(FieldPtr field, long value);
  // Exact decoding: rejects wrong lengths and values >= q.
  static Scalar FromBytes(FieldPtr field, ByteSpan bytes);
  // Reduces an arbitrary-length big-endian integer mod q.
  static Scalar Reduce(FieldPtr field, ByteSpan bytes);
  static Scalar FromDecimal(FieldPtr field, const std::string& text);
  static Scalar Random(FieldPtr field, Rng& rng);
  static Scalar RandomNonZero(FieldPtr field, Rng& rng);

  bool valid() const { return field_ != nullptr; }
  const FieldPtr& field() const { return field_; }
  const mpz_class& value() const { return value_; }

  bool IsZero() const { return value_ == 0; }
  bool IsOne() const { return value_ == 1; }
  bool IsMinusOne() const;

  Scalar Inverse() const;
  Scalar Pow(const mpz_class& e) const;

  Bytes ToBytes() const;
  // Little-endian fixed-width encoding, as consumed by the curve backend.
  Bytes ToLittleEndian() const;
  std::string ToDecimal() const { return value_.get_str(10); }
  std::string ToHex() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return a * b.Inverse();
  }
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  void CheckSameField(const Scalar& o) const;

  FieldPtr field_;
  mpz_class value_;
};

bool SameField(const FieldPtr& a, const FieldPtr& b);

}  // namespace cdedit
