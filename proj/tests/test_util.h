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

#include <string>
#include <vector>

#include "cdedit/policy/policy.h"
#include "cdedit/rng.h"

namespace cdedit::testing {

// Uniformly shaped random monotone formula with exactly `leaves` leaves,
// labels drawn from `universe`.
inline policy::AccessTree RandomTree(Rng& rng, size_t leaves,
                                     const std::vector<std::string>& universe) {
  if (leaves == 1) {
    return policy::AccessTree::Leaf(universe[rng.Below(universe.size())]);
  }
  size_t left = 1 + rng.Below(leaves - 1);
  auto l = RandomTree(rng, left, universe);
  auto r = RandomTree(rng, leaves - left, universe);
  return rng.Below(2) == 0 ? policy::AccessTree::And(std::move(l), std::move(r))
                           : policy::AccessTree::Or(std::move(l), std::move(r));
}

inline std::vector<std::string> Universe(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back("attr" + std::to_string(i));
  return out;
}

inline policy::AttributeSet SubsetFromMask(
    const std::vector<std::string>& universe, unsigned mask) {
  policy::AttributeSet out;
  for (size_t i = 0; i < universe.size(); ++i) {
    if (mask & (1u << i)) out.insert(universe[i]);
  }
  return out;
}

// A satisfying attribute set: a random minimal-ish witness of the tree.
inline policy::AttributeSet SatisfyingSet(Rng& rng,
                                          const policy::AccessTree& t) {
  using Kind = policy::AccessTree::Kind;
  switch (t.kind()) {
    case Kind::kLeaf:
      return {t.attribute()};
    case Kind::kOr:
      return rng.Below(2) == 0 ? SatisfyingSet(rng, t.left())
                               : SatisfyingSet(rng, t.right());
    case Kind::kAnd: {
      auto out = SatisfyingSet(rng, t.left());
      out.merge(SatisfyingSet(rng, t.right()));
      return out;
    }
  }
  return {};
}

}  // namespace cdedit::testing
