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

#include <openssl/sha.h>

#include "cdedit/bilinear/group.h"
#include "cdedit/bilinear/hash_suite.h"
#include "doctest.h"

namespace cdedit {
namespace {

// Independent re-implementation of the counter-mode expansion, written
// directly against OpenSSL so the mock H1 check does not reuse library code.
Bytes ReferenceExpand(std::string_view tag, const Bytes& input, size_t len) {
  Bytes out;
  for (uint32_t ctr = 0; out.size() < len; ++ctr) {
    Bytes buf;
    uint32_t tl = static_cast<uint32_t>(tag.size());
    for (int s = 24; s >= 0; s -= 8) buf.push_back(uint8_t(tl >> s));
    buf.insert(buf.end(), tag.begin(), tag.end());
    for (int s = 24; s >= 0; s -= 8) buf.push_back(uint8_t(ctr >> s));
    buf.insert(buf.end(), input.begin(), input.end());
    uint8_t md[SHA256_DIGEST_LENGTH];
    SHA256(buf.data(), buf.size(), md);
    out.insert(out.end(), md, md + SHA256_DIGEST_LENGTH);
  }
  out.resize(len);
  return out;
}

TEST_CASE("mock bilinearity with small exponents") {
  GroupParams p = GroupParams::Mock(mpz_class(101));
  Gt lhs = Pair(p.g().Pow(p.FromInt(3)), p.h().Pow(p.FromInt(5)));
  CHECK(lhs == p.gt().Pow(p.FromInt(15)));
}

TEST_CASE("mock pairing matches direct modular multiplication") {
  constexpr uint64_t kQ = 7919;
  GroupParams p = GroupParams::Mock(mpz_class(static_cast<unsigned long>(kQ)));
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    uint64_t a = rng.Below(kQ);
    uint64_t b = rng.Below(kQ);
    Gt e = Pair(p.g().Pow(p.FromInt(long(a))), p.h().Pow(p.FromInt(long(b))));
    CHECK(e.MockLog().value() == mpz_class(static_cast<unsigned long>(a * b % kQ)));
    CHECK(e == p.gt().Pow(p.FromInt(long(a * b % kQ))));
  }
}

TEST_CASE("group setup rejects bad configurations") {
  CHECK_THROWS_AS(ParseBackend("quantum"), Error);
  try {
    GroupParams::Setup(Backend::kReal, 256);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedSecurityLevel);
  }
  CHECK_THROWS(GroupParams::Mock(mpz_class(100)));
}

TEST_CASE("real backend is a type-III curve at the requested level") {
  GroupParams p = GroupParams::Setup(Backend::kReal, 96);
  CHECK(p.curve() == "BLS12-381");
  CHECK(p.security_bits() >= 96);
  CHECK(mpz_sizeinbase(p.order().get_mpz_t(), 2) == 255);
  CHECK(!p.g().IsIdentity());
  CHECK(!p.h().IsIdentity());
  CHECK(!p.gt().IsIdentity());
}

void CheckBilinear(const GroupParams& p, int samples) {
  Rng rng(11);
  for (int i = 0; i < samples; ++i) {
    Scalar a = p.RandomScalar(rng);
    Scalar b = p.RandomScalar(rng);
    Gt lhs = Pair(p.g().Pow(a), p.h().Pow(b));
    REQUIRE(lhs == p.gt().Pow(a * b));
  }
}

TEST_CASE("bilinearity on random samples") {
  SUBCASE("mock") { CheckBilinear(GroupParams::Mock(), 1000); }
  SUBCASE("real") {
    GroupParams p = GroupParams::Setup(Backend::kReal);
    CheckBilinear(p, 1000);
  }
}

TEST_CASE("multi pairing equals product of single pairings") {
  for (Backend b : {Backend::kMock, Backend::kReal}) {
    GroupParams p = GroupParams::Setup(b);
    Rng rng(3);
    std::vector<std::pair<G1, G2>> terms;
    Gt expected = p.GtIdentity();
    for (int i = 0; i < 4; ++i) {
      G1 x = p.g().Pow(p.RandomScalar(rng));
      G2 y = p.h().Pow(p.RandomScalar(rng));
      terms.emplace_back(x, y);
      expected *= Pair(x, y);
    }
    CHECK(MultiPair(terms) == expected);
    // Identity factors contribute nothing.
    terms.emplace_back(p.G1Identity(), p.h());
    CHECK(MultiPair(terms) == expected);
  }
}

TEST_CASE("group laws on the real backend") {
  GroupParams p = GroupParams::Setup(Backend::kReal);
  Rng rng(5);
  Scalar a = p.RandomScalar(rng);
  Scalar b = p.RandomScalar(rng);
  CHECK(p.g().Pow(a) * p.g().Pow(b) == p.g().Pow(a + b));
  CHECK(p.h().Pow(a) / p.h().Pow(b) == p.h().Pow(a - b));
  CHECK(p.gt().Pow(a) * p.gt().Pow(b) == p.gt().Pow(a + b));
  CHECK(p.gt().Pow(a).Inverse() == p.gt().Pow(-a));
  CHECK(p.g().Pow(p.Zero()).IsIdentity());
  CHECK(p.gt().Pow(p.FromInt(3)) == p.gt() * p.gt() * p.gt());
  CHECK(p.g().Pow(-p.One()) == p.g().Inverse());
}

template <class E>
void CheckRoundTrip(const E& e, E (GroupParams::*decode)(ByteSpan) const,
                    const GroupParams& p) {
  E back = (p.*decode)(e.ToBytes());
  CHECK(back == e);
  CHECK(back.ToBytes() == e.ToBytes());
}

TEST_CASE("serialization round-trip for all three groups") {
  for (Backend b : {Backend::kMock, Backend::kReal}) {
    GroupParams p = GroupParams::Setup(b);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
      Scalar s = p.RandomScalar(rng);
      CheckRoundTrip(p.g().Pow(s), &GroupParams::DecodeG1, p);
      CheckRoundTrip(p.h().Pow(s), &GroupParams::DecodeG2, p);
      CheckRoundTrip(p.gt().Pow(s), &GroupParams::DecodeGt, p);
      CHECK(p.DecodeScalar(s.ToBytes()) == s);
    }
    CheckRoundTrip(p.G1Identity(), &GroupParams::DecodeG1, p);
    CheckRoundTrip(p.G2Identity(), &GroupParams::DecodeG2, p);
  }
}

TEST_CASE("decoders reject malformed input") {
  GroupParams p = GroupParams::Setup(Backend::kReal);
  Bytes junk(48, 0x5a);
  CHECK_THROWS_AS(p.DecodeG1(junk), Error);
  CHECK_THROWS_AS(p.DecodeG2(Bytes(95, 0)), Error);
  Bytes gt = p.gt().ToBytes();
  gt[100] ^= 1;
  CHECK_THROWS_AS(p.DecodeGt(gt), Error);
  Bytes too_big(32, 0xff);
  CHECK_THROWS_AS(p.DecodeScalar(too_big), Error);
}

TEST_CASE("scalar arithmetic") {
  GroupParams p = GroupParams::Mock(mpz_class(101));
  Scalar a = p.FromInt(7);
  CHECK((a * a.Inverse()).IsOne());
  CHECK(p.FromInt(-1).IsMinusOne());
  CHECK(p.FromInt(-1).value() == 100);
  CHECK((p.FromInt(60) + p.FromInt(50)).value() == 9);
  CHECK((p.FromInt(3) - p.FromInt(5)).value() == 99);
  CHECK(p.FromInt(5).ToBytes() == Bytes{5});
  CHECK_THROWS_AS(p.Zero().Inverse(), Error);
  GroupParams other = GroupParams::Mock(mpz_class(103));
  CHECK_THROWS_AS(a + other.FromInt(1), Error);
}

TEST_CASE("hash to group is deterministic and domain separated") {
  for (Backend b : {Backend::kMock, Backend::kReal}) {
    HashSuite hs(GroupParams::Setup(b));
    CHECK(hs.H1Attribute("attrA", 1, 2) == hs.H1Attribute("attrA", 1, 2));
    CHECK(hs.H1Attribute("attrA", 1, 2) != hs.H1Attribute("attrA", 2, 1));
    CHECK(hs.H1Column(5, 2, 1) != hs.H1Attribute("521", 2, 1));
    CHECK(hs.H2(ToBytes("x")) != hs.Hmsg(ToBytes("x")));
    CHECK(hs.Gk(hs.params().gt()) != hs.H2Mask(hs.params().gt()));
    CHECK(hs.Gk(hs.params().gt()).size() ==
          hs.params().field()->byte_width());
  }
}

TEST_CASE("structured encodings never collide") {
  Bytes attr = HashSuite::EncodeAttribute("attrA", 1, 2);
  CHECK(attr == Bytes{1, 0, 0, 0, 5, 'a', 't', 't', 'r', 'A', 1, 2});
  Bytes col = HashSuite::EncodeColumn(5, 2, 1);
  CHECK(col == Bytes{0, 0, 0, 0, 5, 2, 1});
  CHECK(col != HashSuite::EncodeAttribute("521", 2, 1));
  // Exhaustive over small inputs: the leading byte separates the families.
  for (uint32_t v = 0; v < 64; ++v) {
    for (int l = 1; l <= 3; ++l) {
      for (int t = 1; t <= 2; ++t) {
        Bytes c = HashSuite::EncodeColumn(v, l, t);
        CHECK(c != HashSuite::EncodeAttribute(std::to_string(v), l, t));
        CHECK(c.front() != HashSuite::EncodeAttribute("", l, t).front());
      }
    }
  }
  CHECK_THROWS_AS(HashSuite::EncodeColumn(1, 4, 1), Error);
  CHECK_THROWS_AS(HashSuite::EncodeAttribute("a", 1, 3), Error);
}

TEST_CASE("mock H1 equals the reduced digest of the encoded input") {
  GroupParams p = GroupParams::Mock();
  HashSuite hs(p);
  for (std::string attr : {"attrA", "doctor", "org:ACME"}) {
    Bytes enc = HashSuite::EncodeAttribute(attr, 3, 2);
    Bytes wide = ReferenceExpand(HashSuite::kH1Tag, enc,
                                 p.field()->byte_width() + 16);
    mpz_class v;
    mpz_import(v.get_mpz_t(), wide.size(), 1, 1, 1, 0, wide.data());
    v %= p.order();
    CHECK(hs.H1(enc).MockLog().value() == v);
  }
}

TEST_CASE("rng is reproducible per seed") {
  Rng a(42), b(42), c(43);
  CHECK(a.Draw(100) == b.Draw(100));
  CHECK(Rng(42).Draw(32) != c.Draw(32));
  Rng d(1);
  for (int i = 0; i < 1000; ++i) CHECK(d.Below(7) < 7);
}

}  // namespace
}  // namespace cdedit
