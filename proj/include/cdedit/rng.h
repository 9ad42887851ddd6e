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
#include <limits>
#include <span>

#include "cdedit/bytes.h"

namespace cdedit {

/// Hash-based deterministic random bit generator.
///
/// Every randomized operation takes an Rng explicitly; there is no ambient
/// randomness. Seeded instances reproduce the same stream, OsSeeded() draws
/// the seed from the operating system. Also models
/// std::uniform_random_bit_generator so it can drive <random> and
/// std::shuffle.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed);
  explicit Rng(ByteSpan seed);
  static Rng OsSeeded();

  void Fill(std::span<uint8_t> out);
  Bytes Draw(size_t n);
  uint64_t NextU64();
  // Uniform in [0, bound).
  uint64_t Below(uint64_t bound);

  // Independent child stream; lets callers fork a deterministic sub-stream.
  Rng Fork(std::string_view label);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

 private:
  void Refill();

  Digest key_{};
  uint64_t counter_ = 0;
  Digest block_{};
  size_t used_ = sizeof(Digest);
};

}  // namespace cdedit
