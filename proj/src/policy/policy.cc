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

#include <cctype>

#include "cdedit/error.h"

namespace cdedit::policy {

// ---- tree ------------------------------------------------------------------

AccessTree AccessTree::Leaf(std::string attribute) {
  CDEDIT_ENFORCE(!attribute.empty(), ErrorCode::kEmptyPolicy,
                 "leaf without attribute");
  return AccessTree(std::make_shared<const Node>(
      Node{Kind::kLeaf, std::move(attribute), nullptr, nullptr}));
}

AccessTree AccessTree::And(AccessTree left, AccessTree right) {
  return AccessTree(std::make_shared<const Node>(
      Node{Kind::kAnd, {}, std::move(left.node_), std::move(right.node_)}));
}

AccessTree AccessTree::Or(AccessTree left, AccessTree right) {
  return AccessTree(std::make_shared<const Node>(
      Node{Kind::kOr, {}, std::move(left.node_), std::move(right.node_)}));
}

bool AccessTree::Evaluate(const AttributeSet& attributes) const {
  switch (kind()) {
    case Kind::kLeaf:
      return attributes.contains(attribute());
    case Kind::kAnd:
      return left().Evaluate(attributes) && right().Evaluate(attributes);
    case Kind::kOr:
      return left().Evaluate(attributes) || right().Evaluate(attributes);
  }
  return false;
}

size_t AccessTree::LeafCount() const {
  if (kind() == Kind::kLeaf) return 1;
  return left().LeafCount() + right().LeafCount();
}

size_t AccessTree::AndCount() const {
  if (kind() == Kind::kLeaf) return 0;
  return (kind() == Kind::kAnd ? 1 : 0) + left().AndCount() +
         right().AndCount();
}

AttributeSet AccessTree::Attributes() const {
  if (kind() == Kind::kLeaf) return {attribute()};
  AttributeSet out = left().Attributes();
  out.merge(right().Attributes());
  return out;
}

std::string AccessTree::ToString() const {
  if (kind() == Kind::kLeaf) return attribute();
  auto wrap = [](const AccessTree& t) {
    return t.kind() == Kind::kLeaf ? t.ToString() : "(" + t.ToString() + ")";
  };
  return wrap(left()) + (kind() == Kind::kAnd ? " AND " : " OR ") +
         wrap(right());
}

bool operator==(const AccessTree& a, const AccessTree& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == AccessTree::Kind::kLeaf) return a.attribute() == b.attribute();
  return a.left() == b.left() && a.right() == b.right();
}

// ---- parser ----------------------------------------------------------------

namespace {

bool IsAttributeChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AccessTree Parse() {
    SkipSpace();
    CDEDIT_ENFORCE(pos_ < text_.size(), ErrorCode::kEmptyPolicy,
                   "policy is empty");
    AccessTree tree = Expr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return tree;
  }

 private:
  AccessTree Expr() {
    AccessTree lhs = Term();
    while (Keyword("OR")) lhs = AccessTree::Or(std::move(lhs), Term());
    return lhs;
  }

  AccessTree Term() {
    AccessTree lhs = Factor();
    while (Keyword("AND")) lhs = AccessTree::And(std::move(lhs), Factor());
    return lhs;
  }

  AccessTree Factor() {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      AccessTree inner = Expr();
      SkipSpace();
      if (pos_ >= text_.size() || text_[pos_] != ')') Fail("expected ')'");
      ++pos_;
      return inner;
    }
    size_t start = pos_;
    while (pos_ < text_.size() && IsAttributeChar(text_[pos_])) ++pos_;
    if (start == pos_) Fail("expected attribute or '('");
    std::string word(text_.substr(start, pos_ - start));
    if (word == "AND" || word == "OR") {
      pos_ = start;
      Fail("operator used where an attribute was expected");
    }
    return AccessTree::Leaf(std::move(word));
  }

  // Consumes `word` if it appears next as a whole token.
  bool Keyword(std::string_view word) {
    SkipSpace();
    if (text_.substr(pos_, word.size()) != word) return false;
    size_t end = pos_ + word.size();
    if (end < text_.size() && IsAttributeChar(text_[end])) return false;
    pos_ = end;
    return true;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string& what) {
    throw Error(ErrorCode::kPolicySyntax,
                "position " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

AccessTree ParsePolicy(std::string_view text) { return Parser(text).Parse(); }

// ---- MSP -------------------------------------------------------------------

namespace {

struct LabeledRow {
  std::vector<int> vec;
  std::string label;
};

void Label(const AccessTree& node, std::vector<int> vec, size_t& counter,
           std::vector<LabeledRow>& out) {
  switch (node.kind()) {
    case AccessTree::Kind::kLeaf:
      out.push_back({std::move(vec), node.attribute()});
      return;
    case AccessTree::Kind::kOr:
      Label(node.left(), vec, counter, out);
      Label(node.right(), std::move(vec), counter, out);
      return;
    case AccessTree::Kind::kAnd: {
      std::vector<int> left = vec;
      left.resize(counter, 0);
      left.push_back(1);
      std::vector<int> right(counter, 0);
      right.push_back(-1);
      ++counter;
      Label(node.left(), std::move(left), counter, out);
      Label(node.right(), std::move(right), counter, out);
      return;
    }
  }
}

}  // namespace

Msp ToMsp(const AccessTree& tree, const FieldPtr& field, size_t max_rows) {
  size_t leaves = tree.LeafCount();
  CDEDIT_ENFORCE(leaves <= max_rows, ErrorCode::kPolicyTooLarge,
                 "policy has " + std::to_string(leaves) + " leaves, cap is " +
                     std::to_string(max_rows));
  std::vector<LabeledRow> rows;
  size_t counter = 1;
  Label(tree, {1}, counter, rows);

  Msp msp;
  for (auto& row : rows) {
    std::vector<Scalar> scalars;
    scalars.reserve(counter);
    for (size_t j = 0; j < counter; ++j) {
      int v = j < row.vec.size() ? row.vec[j] : 0;
      scalars.push_back(Scalar::FromInt(field, v));
    }
    msp.matrix.push_back(std::move(scalars));
    msp.labels.push_back(std::move(row.label));
  }
  return msp;
}

ShareVector ShareWithVector(const Msp& msp, std::vector<Scalar> v) {
  CDEDIT_ENFORCE(v.size() == msp.cols(), ErrorCode::kInvalidArgument,
                 "sharing vector length does not match the MSP");
  ShareVector out;
  out.secret = v.front();
  for (const auto& row : msp.matrix) {
    Scalar acc = Scalar::Zero(v.front().field());
    for (size_t j = 0; j < row.size(); ++j) {
      if (!row[j].IsZero()) acc += row[j] * v[j];
    }
    out.shares.push_back(std::move(acc));
  }
  out.blinding = std::move(v);
  return out;
}

ShareVector ShareSecret(const Msp& msp, const Scalar& secret, Rng& rng) {
  std::vector<Scalar> v{secret};
  for (size_t j = 1; j < msp.cols(); ++j) {
    v.push_back(Scalar::Random(secret.field(), rng));
  }
  return ShareWithVector(msp, std::move(v));
}

std::optional<Coefficients> ReconstructionCoefficients(
    const Msp& msp, const AttributeSet& attributes) {
  std::vector<size_t> selected;
  for (size_t u = 0; u < msp.rows(); ++u) {
    if (attributes.contains(msp.labels[u])) selected.push_back(u);
  }
  if (selected.empty() || msp.cols() == 0) return std::nullopt;

  const FieldPtr& field = msp.matrix.front().front().field();
  const size_t n2 = msp.cols();
  const size_t unknowns = selected.size();

  // Augmented system (M_I)^T gamma = e_1: one equation per column of M.
  std::vector<std::vector<Scalar>> a(n2);
  for (size_t j = 0; j < n2; ++j) {
    for (size_t k = 0; k < unknowns; ++k) {
      a[j].push_back(msp.matrix[selected[k]][j]);
    }
    a[j].push_back(Scalar::FromInt(field, j == 0 ? 1 : 0));
  }

  std::vector<size_t> pivot_col_of_row;
  size_t row = 0;
  for (size_t col = 0; col < unknowns && row < n2; ++col) {
    size_t pivot = row;
    while (pivot < n2 && a[pivot][col].IsZero()) ++pivot;
    if (pivot == n2) continue;
    std::swap(a[row], a[pivot]);
    Scalar inv = a[row][col].Inverse();
    for (auto& x : a[row]) x *= inv;
    for (size_t r = 0; r < n2; ++r) {
      if (r == row || a[r][col].IsZero()) continue;
      Scalar factor = a[r][col];
      for (size_t c = col; c <= unknowns; ++c) {
        if (!a[row][c].IsZero()) a[r][c] -= factor * a[row][c];
      }
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  // Inconsistent: a zeroed equation with nonzero right-hand side.
  for (size_t r = row; r < n2; ++r) {
    if (!a[r][unknowns].IsZero()) return std::nullopt;
  }

  Coefficients out;
  for (size_t r = 0; r < pivot_col_of_row.size(); ++r) {
    const Scalar& value = a[r][unknowns];
    if (!value.IsZero()) out.emplace(selected[pivot_col_of_row[r]], value);
  }
  return out;
}

nlohmann::json ToJson(const Msp& msp) {
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : msp.matrix) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(x.ToDecimal());
    matrix.push_back(std::move(r));
  }
  return {{"rows", msp.rows()},
          {"cols", msp.cols()},
          {"matrix", std::move(matrix)},
          {"labels", msp.labels}};
}

Msp MspFromJson(const nlohmann::json& j, const FieldPtr& field) {
  Msp msp;
  for (const auto& r : j.at("matrix")) {
    std::vector<Scalar> row;
    for (const auto& x : r) {
      row.push_back(Scalar::FromDecimal(field, x.get<std::string>()));
    }
    msp.matrix.push_back(std::move(row));
  }
  msp.labels = j.at("labels").get<std::vector<std::string>>();
  CDEDIT_ENFORCE(msp.labels.size() == msp.rows(), ErrorCode::kDeserialization,
                 "MSP label count does not match row count");
  for (const auto& row : msp.matrix) {
    CDEDIT_ENFORCE(row.size() == msp.cols(), ErrorCode::kDeserialization,
                   "ragged MSP matrix");
  }
  return msp;
}

}  // namespace cdedit::policy
