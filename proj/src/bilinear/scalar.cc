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

#include "cdedit/bilinear/scalar.h"

#include <algorithm>

#include "cdedit/error.h"

namespace cdedit {

ScalarField::ScalarField(mpz_class modulus) : modulus_(std::move(modulus)) {
  CDEDIT_ENFORCE(modulus_ > 2, ErrorCode::kInvalidArgument,
                 "scalar modulus must exceed 2");
  bit_length_ = mpz_sizeinbase(modulus_.get_mpz_t(), 2);
  byte_width_ = (bit_length_ + 7) / 8;
}

FieldPtr MakeField(const mpz_class& modulus) {
  return std::make_shared<const ScalarField>(modulus);
}

bool SameField(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->modulus() == b->modulus();
}

Scalar::Scalar(FieldPtr field, mpz_class value)
    : field_(std::move(field)), value_(std::move(value)) {
  CDEDIT_ENFORCE(field_ != nullptr, ErrorCode::kInvalidArgument,
                 "scalar without field");
  mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(),
          field_->modulus().get_mpz_t());
}

Scalar Scalar::FromInt(FieldPtr field, long value) {
  return {std::move(field), mpz_class(value)};
}

Scalar Scalar::FromBytes(FieldPtr field, ByteSpan bytes) {
  CDEDIT_ENFORCE(bytes.size() == field->byte_width(),
                 ErrorCode::kDeserialization, "scalar has wrong width");
  mpz_class v;
  mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  CDEDIT_ENFORCE(v < field->modulus(), ErrorCode::kDeserialization,
                 "scalar out of range");
  return {std::move(field), std::move(v)};
}

Scalar Scalar::Reduce(FieldPtr field, ByteSpan bytes) {
  mpz_class v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return {std::move(field), std::move(v)};
}

Scalar Scalar::FromDecimal(FieldPtr field, const std::string& text) {
  mpz_class v;
  CDEDIT_ENFORCE(!text.empty() && v.set_str(text, 10) == 0,
                 ErrorCode::kDeserialization, "bad decimal scalar: " + text);
  CDEDIT_ENFORCE(v >= 0 && v < field->modulus(), ErrorCode::kDeserialization,
                 "decimal scalar out of range");
  return {std::move(field), std::move(v)};
}

Scalar Scalar::Random(FieldPtr field, Rng& rng) {
  // 128 surplus bits make the modular bias negligible.
  Bytes wide = rng.Draw(field->byte_width() + 16);
  return Reduce(std::move(field), wide);
}

Scalar Scalar::RandomNonZero(FieldPtr field, Rng& rng) {
  for (;;) {
    Scalar s = Random(field, rng);
    if (!s.IsZero()) return s;
  }
}

bool Scalar::IsMinusOne() const {
  return value_ + 1 == field_->modulus();
}

Scalar Scalar::Inverse() const {
  CDEDIT_ENFORCE(!IsZero(), ErrorCode::kInvalidArgument,
                 "inverse of zero scalar");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), value_.get_mpz_t(),
             field_->modulus().get_mpz_t());
  return {field_, std::move(inv)};
}

Scalar Scalar::Pow(const mpz_class& e) const {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(),
           field_->modulus().get_mpz_t());
  return {field_, std::move(out)};
}

Bytes Scalar::ToBytes() const {
  Bytes out(field_->byte_width(), 0);
  size_t count = 0;
  Bytes tmp((mpz_sizeinbase(value_.get_mpz_t(), 2) + 7) / 8 + 1);
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, value_.get_mpz_t());
  std::copy_n(tmp.begin(), count, out.end() - static_cast<long>(count));
  return out;
}

Bytes Scalar::ToLittleEndian() const {
  Bytes out = ToBytes();
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Scalar::ToHex() const { return cdedit::ToHex(ToBytes()); }

void Scalar::CheckSameField(const Scalar& o) const {
  CDEDIT_ENFORCE(SameField(field_, o.field_), ErrorCode::kBackendMismatch,
                 "scalars from different fields");
}

Scalar Scalar::operator-() const { return {field_, -value_}; }

Scalar& Scalar::operator+=(const Scalar& o) {
  CheckSameField(o);
  value_ += o.value_;
  if (value_ >= field_->modulus()) value_ -= field_->modulus();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  CheckSameField(o);
  value_ -= o.value_;
  if (value_ < 0) value_ += field_->modulus();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  CheckSameField(o);
  value_ *= o.value_;
  mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(),
          field_->modulus().get_mpz_t());
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return SameField(a.field_, b.field_) && a.value_ == b.value_;
}

}  // namespace cdedit
