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

#include <optional>
#include <string>
#include <vector>

#include "cdedit/bytes.h"
#include "cdedit/cpabe/cpabe.h"
#include "cdedit/pch/pch.h"
#include "cdedit/token/token.h"
#include "json.hpp"

// Toy permissioned chain with immutable and chameleon-hashed (mutable)
// transactions and blocks.
//
//   leaf(tx)     = SHA256("tx" || payload) or SHA256("ch" || ch)
//   inner(B)     = SHA256(PreH || TX_root || TS)  or  KDF(ch) when mutable
//   hash(B)      = SHA256(ctr || inner(B)),  valid iff < D and ctr < max
//   PreH_{i+1}   = hash(B_i)
namespace cdedit::chain {

constexpr int kDigestBits = 256;

enum class Kind { kImmutable, kMutable };
std::string_view KindName(Kind kind);

struct Transaction {
  uint64_t id = 0;
  Kind kind = Kind::kImmutable;
  Bytes payload;                    // immutable transactions
  std::optional<pch::PchTuple> tuple;  // mutable transactions; m is the payload

  const Bytes& Message() const { return tuple ? tuple->m : payload; }
  Digest LeafDigest() const;
};

Transaction MakeImmutableTx(uint64_t id, Bytes payload);

// Public material needed to hash and adapt chameleon digests.
struct PchContext {
  const HashSuite& hs;
  const G2& pk;
  const cpabe::MasterPublicKey& mpk;
};

Transaction MakeMutableTx(uint64_t id, Bytes payload, const PchContext& ctx,
                          const policy::AccessTree& policy,
                          const cpabe::Identity& owner, Rng& rng);

// Binary tree over leaf digests; an odd level duplicates its last node and a
// single leaf is its own root. Throws EmptyList.
Digest MerkleRoot(const std::vector<Digest>& leaves);
Digest MerkleRoot(const std::vector<Transaction>& txs);
Digest MerkleNode(const Digest& left, const Digest& right);

struct Block {
  uint64_t height = 0;
  Digest prev{};  // PreH
  Digest tx_root{};
  int64_t ts = 0;
  std::vector<Transaction> txs;
  uint64_t ctr = 0;
  Kind kind = Kind::kImmutable;
  std::optional<pch::PchTuple> tuple;  // mutable blocks

  // Canonical (PreH, TX_root, TS) encoding, the chameleon message of a
  // mutable block.
  Bytes Message() const;
  Digest Inner() const;
  Digest Hash() const;
};

Digest OuterHash(uint64_t ctr, const Digest& inner);
mpz_class DigestValue(const Digest& d);

struct ChainConfig {
  mpz_class difficulty = mpz_class(1) << (kDigestBits - 4);
  uint64_t max_hash_queries = uint64_t{1} << 20;
};

// Finds the first ctr whose outer hash is below the difficulty. Throws
// NonceExhausted.
uint64_t Mine(const Digest& inner, const ChainConfig& config);

// Difficulty, nonce bound, Merkle root, and every chameleon tuple inside.
bool ValidateBlock(const Block& block, const ChainConfig& config,
                   const HashSuite& hs);

struct EditLogEntry {
  uint64_t seq = 0;
  token::EditType type = token::EditType::kTx;
  uint64_t target = 0;        // tx id or block height
  uint64_t block_height = 0;  // block holding the target
  std::string editor;
  token::CredibilityLevel editor_level = token::CredibilityLevel::kM1T;
  std::string token_id;
  token::Timestamp time = 0;
  Digest old_digest{};  // SHA256 of the old message
  Digest new_digest{};
  pch::PchTuple old_tuple;
  pch::PchTuple new_tuple;
  Digest prev_entry{};
  Digest entry_hash{};

  Digest ComputeHash() const;
};

nlohmann::json ToJson(const EditLogEntry& e);
EditLogEntry EditLogEntryFromJson(const nlohmann::json& j,
                                  const GroupParams& params);

// Everything an edit needs besides its target.
struct EditContext {
  const PchContext& pch;
  token::Pts& pts;
  const token::PrivilegeToken& token;
  const pch::EditingKey& key;
  const cpabe::Identity& modifier;
  std::string editor;
  token::Timestamp now;
  Rng& rng;
  // False models a node that skips token checks and use accounting; the edit
  // is still logged under the presented token for audit.
  bool enforce_token = true;
};

struct TxLocation {
  uint64_t height;
  size_t index;
};

// Single-writer chain state with its append-only edit log.
class Chain {
 public:
  static constexpr std::string_view kGenesisPayload = "cdedit genesis";

  static Chain Create(ChainConfig config, int64_t genesis_time);

  const ChainConfig& config() const { return config_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(uint64_t height) const;
  size_t size() const { return blocks_.size(); }
  const Block& head() const { return blocks_.back(); }
  const std::vector<EditLogEntry>& log() const { return log_; }
  const EditLogEntry& log_entry(uint64_t seq) const;

  uint64_t NextTxId() { return next_tx_id_++; }
  std::optional<TxLocation> FindTx(uint64_t id) const;
  const Transaction& tx(uint64_t id) const;
  // Whether a token request names existing targets.
  bool ResolveTarget(token::EditType type, uint64_t index, uint32_t n) const;

  const Block& MineImmutable(std::vector<Transaction> txs, int64_t ts);
  const Block& MineMutable(std::vector<Transaction> txs, int64_t ts,
                           const PchContext& ctx,
                           const policy::AccessTree& policy,
                           const cpabe::Identity& owner, Rng& rng);

  // Every block, every link, the genesis anchor and the edit log chain.
  bool Validate(const HashSuite& hs) const;
  bool ValidateLinks() const;
  bool ValidateLog() const;

  // Throws InvalidToken, Expired, TargetMismatch, ImmutableTarget,
  // Unauthorized, Exhausted, UnknownTarget.
  const EditLogEntry& ApplyTxEdit(const EditContext& ctx, uint64_t tx_id,
                                  Bytes new_payload);
  // Also throws TokenKindMismatch and LinkBroken.
  const EditLogEntry& ApplyBlEdit(const EditContext& ctx, uint64_t height,
                                  std::vector<Transaction> new_txs);

  nlohmann::json ToJson() const;
  static Chain FromJson(const nlohmann::json& j, const GroupParams& params);

 private:
  const Block& Append(Block block);
  void CheckToken(const EditContext& ctx, token::EditType type,
                  uint64_t target, uint64_t height) const;
  const EditLogEntry& Record(EditLogEntry entry);

  ChainConfig config_;
  std::vector<Block> blocks_;
  std::vector<EditLogEntry> log_;
  uint64_t next_tx_id_ = 1;
};

nlohmann::json ToJson(const Transaction& tx);
Transaction TransactionFromJson(const nlohmann::json& j,
                                const GroupParams& params);
nlohmann::json ToJson(const Block& block);
Block BlockFromJson(const nlohmann::json& j, const GroupParams& params);

}  // namespace cdedit::chain
