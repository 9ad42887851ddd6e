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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cdedit/bilinear/scalar.h"
#include "json.hpp"

namespace cdedit::policy {

using AttributeSet = std::set<std::string>;

/// Monotone boolean formula over attributes (AND/OR gates only).
class AccessTree {
 public:
  enum class Kind { kLeaf, kAnd, kOr };

  static AccessTree Leaf(std::string attribute);
  static AccessTree And(AccessTree left, AccessTree right);
  static AccessTree Or(AccessTree left, AccessTree right);

  Kind kind() const { return node_->kind; }
  const std::string& attribute() const { return node_->attribute; }
  AccessTree left() const { return AccessTree(node_->left); }
  AccessTree right() const { return AccessTree(node_->right); }

  bool Evaluate(const AttributeSet& attributes) const;
  size_t LeafCount() const;
  size_t AndCount() const;
  AttributeSet Attributes() const;
  // Fully parenthesized form; parses back to the same tree.
  std::string ToString() const;

  friend bool operator==(const AccessTree& a, const AccessTree& b);

 private:
  struct Node {
    Kind kind;
    std::string attribute;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };
  explicit AccessTree(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Grammar (AND binds tighter than OR, both left-associative):
//   expr   := term ('OR' term)*
//   term   := factor ('AND' factor)*
//   factor := attribute | '(' expr ')'
//   attribute := [A-Za-z0-9_:]+
AccessTree ParsePolicy(std::string_view text);

/// Monotone span program: share-generating matrix with one labeled row per
/// leaf of the source formula.
struct Msp {
  std::vector<std::vector<Scalar>> matrix;
  std::vector<std::string> labels;

  size_t rows() const { return matrix.size(); }
  size_t cols() const { return matrix.empty() ? 0 : matrix.front().size(); }
};

inline constexpr size_t kDefaultMaxRows = 128;

// Counter-based labeling: the root holds (1); OR copies the parent vector to
// both children; AND with counter c gives the left child the parent vector
// padded to c entries followed by 1, the right child c zeros followed by -1,
// then increments c. Rows are emitted in left-to-right leaf order.
Msp ToMsp(const AccessTree& tree, const FieldPtr& field,
          size_t max_rows = kDefaultMaxRows);

struct ShareVector {
  Scalar secret;
  std::vector<Scalar> blinding;  // v = (s, r_2, ..., r_n2)
  std::vector<Scalar> shares;    // lambda = M v
};

ShareVector ShareSecret(const Msp& msp, const Scalar& secret, Rng& rng);
// Deterministic variant with the full column vector supplied.
ShareVector ShareWithVector(const Msp& msp, std::vector<Scalar> v);

using Coefficients = std::map<size_t, Scalar>;

// Solves gamma^T M_I = (1, 0, ..., 0) over Z_q, I being the rows whose label
// is in `attributes`. Returns the nonzero coefficients keyed by row index, or
// nullopt when the attribute set is unauthorized. Pivots are chosen at the
// lowest available row; free unknowns are set to zero.
std::optional<Coefficients> ReconstructionCoefficients(
    const Msp& msp, const AttributeSet& attributes);

nlohmann::json ToJson(const Msp& msp);
Msp MspFromJson(const nlohmann::json& j, const FieldPtr& field);

}  // namespace cdedit::policy
