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

#include "cdedit/policy/policy.h"

#include "cdedit/bilinear/group.h"
#include "cdedit/error.h"
#include "doctest.h"
#include "test_util.h"

namespace cdedit::policy {
namespace {

using testing::RandomTree;
using testing::SubsetFromMask;
using testing::Universe;

FieldPtr BigField() { return GroupParams::Mock().field(); }

std::vector<std::vector<long>> AsInts(const Msp& msp) {
  std::vector<std::vector<long>> out;
  for (const auto& row : msp.matrix) {
    std::vector<long> r;
    for (const auto& x : row) {
      r.push_back(x.IsMinusOne() ? -1 : x.value().get_si());
    }
    out.push_back(r);
  }
  return out;
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("parse_policy examples") {
  CHECK(ParsePolicy("A") == AccessTree::Leaf("A"));
  CHECK(ParsePolicy("A AND B OR C") ==
        AccessTree::Or(AccessTree::And(AccessTree::Leaf("A"),
                                       AccessTree::Leaf("B")),
                       AccessTree::Leaf("C")));
  CHECK(ParsePolicy("(A OR B) AND C") ==
        AccessTree::And(AccessTree::Or(AccessTree::Leaf("A"),
                                       AccessTree::Leaf("B")),
                        AccessTree::Leaf("C")));
  CHECK(ParsePolicy("  org:ACME_1  ").attribute() == "org:ACME_1");
  CHECK(ParsePolicy("A OR B OR C").ToString() == "(A OR B) OR C");
  CHECK(ParsePolicy("ANDROID AND ORACLE").LeafCount() == 2);
}

TEST_CASE("parse_policy errors") {
  CHECK(CodeOf([] { ParsePolicy(""); }) == ErrorCode::kEmptyPolicy);
  CHECK(CodeOf([] { ParsePolicy("   "); }) == ErrorCode::kEmptyPolicy);
  CHECK(CodeOf([] { ParsePolicy("A AND"); }) == ErrorCode::kPolicySyntax);
  CHECK(CodeOf([] { ParsePolicy("(A OR B"); }) == ErrorCode::kPolicySyntax);
  CHECK(CodeOf([] { ParsePolicy("A B"); }) == ErrorCode::kPolicySyntax);
  CHECK(CodeOf([] { ParsePolicy("A & B"); }) == ErrorCode::kPolicySyntax);
  CHECK(CodeOf([] { ParsePolicy("OR"); }) == ErrorCode::kPolicySyntax);
  std::string message;
  try {
    ParsePolicy("A AND (B OR )");
  } catch (const Error& e) {
    message = e.what();
  }
  CHECK(message.find("position 12") != std::string::npos);
}

TEST_CASE("printing parses back to the same tree") {
  Rng rng(1);
  auto universe = Universe(6);
  for (int i = 0; i < 200; ++i) {
    auto t = RandomTree(rng, 1 + rng.Below(15), universe);
    CHECK(ParsePolicy(t.ToString()) == t);
  }
}

TEST_CASE("to_msp examples") {
  FieldPtr f = BigField();
  Msp leaf = ToMsp(ParsePolicy("A"), f);
  CHECK(AsInts(leaf) == std::vector<std::vector<long>>{{1}});
  CHECK(leaf.labels == std::vector<std::string>{"A"});

  Msp disj = ToMsp(ParsePolicy("A OR B"), f);
  CHECK(AsInts(disj) == std::vector<std::vector<long>>{{1}, {1}});
  CHECK(disj.labels == std::vector<std::string>{"A", "B"});

  Msp conj = ToMsp(ParsePolicy("A AND B"), f);
  CHECK(AsInts(conj) == std::vector<std::vector<long>>{{1, 1}, {0, -1}});

  Msp mixed = ToMsp(ParsePolicy("A AND B OR C"), f);
  CHECK(AsInts(mixed) ==
        std::vector<std::vector<long>>{{1, 1}, {0, -1}, {1, 0}});
  CHECK(mixed.labels == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("msp dimensions follow the formula shape") {
  Rng rng(2);
  auto universe = Universe(6);
  for (int i = 0; i < 100; ++i) {
    auto t = RandomTree(rng, 1 + rng.Below(15), universe);
    Msp m = ToMsp(t, BigField());
    CHECK(m.rows() == t.LeafCount());
    CHECK(m.cols() == 1 + t.AndCount());
  }
}

TEST_CASE("policy size cap") {
  std::string text = "a0";
  for (int i = 1; i < 5; ++i) text += " OR a" + std::to_string(i);
  CHECK(CodeOf([&] { ToMsp(ParsePolicy(text), BigField(), 4); }) ==
        ErrorCode::kPolicyTooLarge);
  CHECK(ToMsp(ParsePolicy(text), BigField(), 5).rows() == 5);
}

TEST_CASE("share_secret examples") {
  FieldPtr f = BigField();
  auto s = Scalar::FromInt(f, 5);
  Rng rng(3);
  CHECK(ShareSecret(ToMsp(ParsePolicy("A"), f), s, rng).shares ==
        std::vector<Scalar>{s});
  CHECK(ShareSecret(ToMsp(ParsePolicy("A OR B"), f), s, rng).shares ==
        std::vector<Scalar>{s, s});
  auto sv = ShareWithVector(ToMsp(ParsePolicy("A AND B"), f),
                            {s, Scalar::FromInt(f, 3)});
  CHECK(sv.shares == std::vector<Scalar>{Scalar::FromInt(f, 8),
                                         Scalar::FromInt(f, -3)});
  CHECK(sv.secret == s);
}

TEST_CASE("reconstruction_coeffs examples") {
  FieldPtr f = BigField();
  Msp disj = ToMsp(ParsePolicy("A OR B"), f);
  auto g = ReconstructionCoefficients(disj, {"A"});
  REQUIRE(g.has_value());
  CHECK(*g == Coefficients{{0, Scalar::One(f)}});

  Msp conj = ToMsp(ParsePolicy("A AND B"), f);
  auto both = ReconstructionCoefficients(conj, {"A", "B"});
  REQUIRE(both.has_value());
  CHECK(*both == Coefficients{{0, Scalar::One(f)}, {1, Scalar::One(f)}});
  CHECK(!ReconstructionCoefficients(conj, {"A"}).has_value());
  CHECK(!ReconstructionCoefficients(conj, {}).has_value());

  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    Scalar secret = Scalar::Random(f, rng);
    auto sv = ShareSecret(conj, secret, rng);
    Scalar acc = Scalar::Zero(f);
    for (const auto& [row, gamma] : *both) acc += gamma * sv.shares[row];
    CHECK(acc == secret);
  }
}

// Independent oracle: over Z_7, enumerate every coefficient vector and test
// gamma^T M_I == e_1 directly.
bool BruteForceInSpan(const Msp& msp, const AttributeSet& theta) {
  constexpr long kQ = 7;
  std::vector<std::vector<long>> rows;
  for (size_t u = 0; u < msp.rows(); ++u) {
    if (!theta.contains(msp.labels[u])) continue;
    std::vector<long> r;
    for (const auto& x : msp.matrix[u]) r.push_back(x.value().get_si());
    rows.push_back(r);
  }
  size_t n = rows.size();
  long total = 1;
  for (size_t i = 0; i < n; ++i) total *= kQ;
  for (long code = 0; code < total; ++code) {
    std::vector<long> gamma(n);
    long c = code;
    for (size_t i = 0; i < n; ++i) {
      gamma[i] = c % kQ;
      c /= kQ;
    }
    bool ok = true;
    for (size_t j = 0; j < msp.cols() && ok; ++j) {
      long acc = 0;
      for (size_t i = 0; i < n; ++i) acc += gamma[i] * rows[i][j];
      ok = ((acc % kQ + kQ) % kQ) == (j == 0 ? 1 : 0);
    }
    if (ok) return true;
  }
  return false;
}

TEST_CASE("span membership agrees with brute force over a tiny field") {
  FieldPtr f = MakeField(mpz_class(7));
  Rng rng(5);
  auto universe = Universe(4);
  for (int i = 0; i < 150; ++i) {
    auto t = RandomTree(rng, 1 + rng.Below(4), universe);
    Msp m = ToMsp(t, f);
    for (unsigned mask = 0; mask < 16; ++mask) {
      auto theta = SubsetFromMask(universe, mask);
      bool brute = BruteForceInSpan(m, theta);
      CHECK(brute == t.Evaluate(theta));
      CHECK(ReconstructionCoefficients(m, theta).has_value() == brute);
    }
  }
}

TEST_CASE("reconstruction succeeds exactly on satisfying sets") {
  FieldPtr f = BigField();
  Rng rng(6);
  auto universe = Universe(6);
  for (int i = 0; i < 120; ++i) {
    auto t = RandomTree(rng, 1 + rng.Below(15), universe);
    Msp m = ToMsp(t, f);
    Scalar secret = Scalar::Random(f, rng);
    auto sv = ShareSecret(m, secret, rng);
    for (unsigned mask = 0; mask < 64; ++mask) {
      auto theta = SubsetFromMask(universe, mask);
      auto gamma = ReconstructionCoefficients(m, theta);
      REQUIRE(gamma.has_value() == t.Evaluate(theta));
      if (!gamma) continue;
      Scalar acc = Scalar::Zero(f);
      for (const auto& [row, g] : *gamma) {
        CHECK(theta.contains(m.labels[row]));
        acc += g * sv.shares[row];
      }
      CHECK(acc == secret);
    }
  }
}

TEST_CASE("duplicate attributes across leaves") {
  FieldPtr f = BigField();
  Msp m = ToMsp(ParsePolicy("(A AND B) OR (A AND C)"), f);
  CHECK(ReconstructionCoefficients(m, {"A", "C"}).has_value());
  CHECK(!ReconstructionCoefficients(m, {"A"}).has_value());
  CHECK(!ReconstructionCoefficients(m, {"B", "C"}).has_value());
}

TEST_CASE("coefficients are deterministic") {
  FieldPtr f = BigField();
  Msp m = ToMsp(ParsePolicy("A OR B OR (C AND D)"), f);
  auto g1 = ReconstructionCoefficients(m, {"A", "B", "C", "D"});
  auto g2 = ReconstructionCoefficients(m, {"A", "B", "C", "D"});
  REQUIRE(g1.has_value());
  CHECK(*g1 == *g2);
  // Lowest pivot row wins.
  CHECK(*g1 == Coefficients{{0, Scalar::One(f)}});
}

TEST_CASE("msp json round trip") {
  FieldPtr f = BigField();
  Msp m = ToMsp(ParsePolicy("(A OR B) AND (C OR D) AND E"), f);
  Msp back = MspFromJson(nlohmann::json::parse(ToJson(m).dump()), f);
  CHECK(back.matrix == m.matrix);
  CHECK(back.labels == m.labels);
  auto j = ToJson(m);
  j["labels"].erase(0);
  CHECK_THROWS_AS(MspFromJson(j, f), Error);
}

}  // namespace
}  // namespace cdedit::policy
