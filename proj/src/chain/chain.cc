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

#include "cdedit/chain/chain.h"

#include <utility>

#include "cdedit/error.h"

namespace cdedit::chain {

namespace {

Digest DigestFromHex(const std::string& hex) {
  Bytes b = FromHex(hex);
  CDEDIT_ENFORCE(b.size() == sizeof(Digest), ErrorCode::kDeserialization,
                 "digest must be 32 bytes");
  Digest d;
  std::copy(b.begin(), b.end(), d.begin());
  return d;
}

std::string Hex(const Digest& d) { return ToHex(d); }

Kind ParseKind(std::string_view text) {
  if (text == "immutable") return Kind::kImmutable;
  if (text == "mutable") return Kind::kMutable;
  throw Error(ErrorCode::kDeserialization,
              "unknown kind '" + std::string(text) + "'");
}

}  // namespace

std::string_view KindName(Kind kind) {
  return kind == Kind::kMutable ? "mutable" : "immutable";
}

// ---- transactions ----------------------------------------------------------

Digest Transaction::LeafDigest() const {
  if (kind == Kind::kMutable) {
    CDEDIT_ENFORCE(tuple.has_value(), ErrorCode::kIntegrityFailure,
                   "mutable transaction without a chameleon tuple");
    return Sha256({AsBytes("ch"), tuple->ch.ToBytes()});
  }
  return Sha256({AsBytes("tx"), payload});
}

Transaction MakeImmutableTx(uint64_t id, Bytes payload) {
  Transaction tx;
  tx.id = id;
  tx.kind = Kind::kImmutable;
  tx.payload = std::move(payload);
  return tx;
}

Transaction MakeMutableTx(uint64_t id, Bytes payload, const PchContext& ctx,
                          const policy::AccessTree& policy,
                          const cpabe::Identity& owner, Rng& rng) {
  Transaction tx;
  tx.id = id;
  tx.kind = Kind::kMutable;
  tx.tuple = pch::Hash(ctx.hs, ctx.pk, ctx.mpk, payload, policy, owner, rng);
  return tx;
}

// ---- merkle ----------------------------------------------------------------

Digest MerkleNode(const Digest& left, const Digest& right) {
  return Sha256({ByteSpan(left), ByteSpan(right)});
}

Digest MerkleRoot(const std::vector<Digest>& leaves) {
  CDEDIT_ENFORCE(!leaves.empty(), ErrorCode::kEmptyList,
                 "Merkle root of an empty list");
  std::vector<Digest> level = leaves;
  while (level.size() > 1) {
    if (level.size() % 2 == 1) level.push_back(level.back());
    std::vector<Digest> next;
    for (size_t i = 0; i < level.size(); i += 2) {
      next.push_back(MerkleNode(level[i], level[i + 1]));
    }
    level = std::move(next);
  }
  return level.front();
}

Digest MerkleRoot(const std::vector<Transaction>& txs) {
  std::vector<Digest> leaves;
  for (const auto& tx : txs) leaves.push_back(tx.LeafDigest());
  return MerkleRoot(leaves);
}

// ---- blocks ----------------------------------------------------------------

Bytes Block::Message() const {
  FieldWriter w;
  w.Add(prev);
  w.Add(tx_root);
  w.AddU64(static_cast<uint64_t>(ts));
  return w.Take();
}

Digest Block::Inner() const {
  if (kind == Kind::kMutable) {
    CDEDIT_ENFORCE(tuple.has_value(), ErrorCode::kIntegrityFailure,
                   "mutable block without a chameleon tuple");
    return Sha256({AsBytes("cdedit/inner/pch"), tuple->ch.ToBytes()});
  }
  return Sha256({AsBytes("cdedit/inner"), Message()});
}

Digest Block::Hash() const { return OuterHash(ctr, Inner()); }

Digest OuterHash(uint64_t ctr, const Digest& inner) {
  Bytes c;
  AppendU64(c, ctr);
  return Sha256({ByteSpan(c), ByteSpan(inner)});
}

mpz_class DigestValue(const Digest& d) {
  mpz_class v;
  mpz_import(v.get_mpz_t(), d.size(), 1, 1, 1, 0, d.data());
  return v;
}

uint64_t Mine(const Digest& inner, const ChainConfig& config) {
  for (uint64_t ctr = 0; ctr < config.max_hash_queries; ++ctr) {
    if (DigestValue(OuterHash(ctr, inner)) < config.difficulty) return ctr;
  }
  throw Error(ErrorCode::kNonceExhausted,
              "no nonce below " + std::to_string(config.max_hash_queries) +
                  " meets the difficulty");
}

bool ValidateBlock(const Block& block, const ChainConfig& config,
                   const HashSuite& hs) {
  try {
    if (block.ctr >= config.max_hash_queries) return false;
    if (!(DigestValue(block.Hash()) < config.difficulty)) return false;
    if (block.tx_root != MerkleRoot(block.txs)) return false;
    for (const auto& tx : block.txs) {
      if (tx.kind == Kind::kMutable) {
        if (!tx.tuple || !pch::Verify(hs, *tx.tuple)) return false;
      } else if (tx.tuple) {
        return false;
      }
    }
    if (block.kind == Kind::kMutable) {
      if (!block.tuple || block.tuple->m != block.Message()) return false;
      if (!pch::Verify(hs, *block.tuple)) return false;
    } else if (block.tuple) {
      return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

// ---- edit log --------------------------------------------------------------

Digest EditLogEntry::ComputeHash() const {
  FieldWriter w;
  w.AddU64(seq);
  w.Add(token::EditTypeName(type));
  w.AddU64(target);
  w.AddU64(block_height);
  w.Add(editor);
  w.Add(token::LevelName(editor_level));
  w.Add(token_id);
  w.AddU64(static_cast<uint64_t>(time));
  w.Add(old_digest);
  w.Add(new_digest);
  w.Add(pch::ToJson(old_tuple).dump());
  w.Add(pch::ToJson(new_tuple).dump());
  w.Add(prev_entry);
  return Sha256(w.bytes());
}

nlohmann::json ToJson(const EditLogEntry& e) {
  return {{"seq", e.seq},
          {"type", token::EditTypeName(e.type)},
          {"target", e.target},
          {"block_height", e.block_height},
          {"editor", e.editor},
          {"editor_level", token::LevelName(e.editor_level)},
          {"token_id", e.token_id},
          {"time", e.time},
          {"old_digest", Hex(e.old_digest)},
          {"new_digest", Hex(e.new_digest)},
          {"old_tuple", pch::ToJson(e.old_tuple)},
          {"new_tuple", pch::ToJson(e.new_tuple)},
          {"prev_entry", Hex(e.prev_entry)},
          {"entry_hash", Hex(e.entry_hash)}};
}

EditLogEntry EditLogEntryFromJson(const nlohmann::json& j,
                                  const GroupParams& params) {
  EditLogEntry e;
  e.seq = j.at("seq").get<uint64_t>();
  e.type = token::ParseEditType(j.at("type").get<std::string>());
  e.target = j.at("target").get<uint64_t>();
  e.block_height = j.at("block_height").get<uint64_t>();
  e.editor = j.at("editor").get<std::string>();
  e.editor_level = token::ParseLevel(j.at("editor_level").get<std::string>());
  e.token_id = j.at("token_id").get<std::string>();
  e.time = j.at("time").get<token::Timestamp>();
  e.old_digest = DigestFromHex(j.at("old_digest").get<std::string>());
  e.new_digest = DigestFromHex(j.at("new_digest").get<std::string>());
  e.old_tuple = pch::PchTupleFromJson(j.at("old_tuple"), params);
  e.new_tuple = pch::PchTupleFromJson(j.at("new_tuple"), params);
  e.prev_entry = DigestFromHex(j.at("prev_entry").get<std::string>());
  e.entry_hash = DigestFromHex(j.at("entry_hash").get<std::string>());
  return e;
}

// ---- chain -----------------------------------------------------------------

Chain Chain::Create(ChainConfig config, int64_t genesis_time) {
  Chain chain;
  chain.config_ = std::move(config);
  Block genesis;
  genesis.height = 0;
  genesis.ts = genesis_time;
  genesis.txs.push_back(MakeImmutableTx(0, ToBytes(kGenesisPayload)));
  genesis.tx_root = MerkleRoot(genesis.txs);
  genesis.ctr = Mine(genesis.Inner(), chain.config_);
  chain.blocks_.push_back(std::move(genesis));
  return chain;
}

const Block& Chain::block(uint64_t height) const {
  CDEDIT_ENFORCE(height < blocks_.size(), ErrorCode::kUnknownTarget,
                 "no block at height " + std::to_string(height));
  return blocks_[height];
}

const EditLogEntry& Chain::log_entry(uint64_t seq) const {
  CDEDIT_ENFORCE(seq < log_.size(), ErrorCode::kMissingLog,
                 "no edit log entry " + std::to_string(seq));
  return log_[seq];
}

std::optional<TxLocation> Chain::FindTx(uint64_t id) const {
  for (const auto& b : blocks_) {
    for (size_t i = 0; i < b.txs.size(); ++i) {
      if (b.txs[i].id == id) return TxLocation{b.height, i};
    }
  }
  return std::nullopt;
}

const Transaction& Chain::tx(uint64_t id) const {
  auto loc = FindTx(id);
  CDEDIT_ENFORCE(loc.has_value(), ErrorCode::kUnknownTarget,
                 "no transaction " + std::to_string(id));
  return blocks_[loc->height].txs[loc->index];
}

bool Chain::ResolveTarget(token::EditType type, uint64_t index,
                          uint32_t n) const {
  if (type == token::EditType::kTx) return FindTx(index).has_value();
  return n >= 1 && index < blocks_.size() && blocks_.size() - index >= n;
}

const Block& Chain::Append(Block block) {
  block.height = blocks_.size();
  block.prev = blocks_.back().Hash();
  block.tx_root = MerkleRoot(block.txs);
  blocks_.push_back(std::move(block));
  return blocks_.back();
}

const Block& Chain::MineImmutable(std::vector<Transaction> txs, int64_t ts) {
  Block b;
  b.kind = Kind::kImmutable;
  b.ts = ts;
  b.height = blocks_.size();
  b.prev = blocks_.back().Hash();
  b.txs = std::move(txs);
  b.tx_root = MerkleRoot(b.txs);
  b.ctr = Mine(b.Inner(), config_);
  return Append(std::move(b));
}

const Block& Chain::MineMutable(std::vector<Transaction> txs, int64_t ts,
                                const PchContext& ctx,
                                const policy::AccessTree& policy,
                                const cpabe::Identity& owner, Rng& rng) {
  Block b;
  b.kind = Kind::kMutable;
  b.ts = ts;
  b.height = blocks_.size();
  b.prev = blocks_.back().Hash();
  b.txs = std::move(txs);
  b.tx_root = MerkleRoot(b.txs);
  b.tuple = pch::Hash(ctx.hs, ctx.pk, ctx.mpk, b.Message(), policy, owner, rng);
  b.ctr = Mine(b.Inner(), config_);
  return Append(std::move(b));
}

bool Chain::ValidateLinks() const {
  if (blocks_.empty() || blocks_.front().prev != Digest{}) return false;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].height != i) return false;
    if (i > 0 && blocks_[i].prev != blocks_[i - 1].Hash()) return false;
  }
  return true;
}

bool Chain::ValidateLog() const {
  Digest prev{};
  for (size_t i = 0; i < log_.size(); ++i) {
    const auto& e = log_[i];
    if (e.seq != i || e.prev_entry != prev) return false;
    if (e.ComputeHash() != e.entry_hash) return false;
    prev = e.entry_hash;
  }
  return true;
}

bool Chain::Validate(const HashSuite& hs) const {
  if (!ValidateLinks() || !ValidateLog()) return false;
  for (const auto& b : blocks_) {
    if (!ValidateBlock(b, config_, hs)) return false;
  }
  return true;
}

void Chain::CheckToken(const EditContext& ctx, token::EditType type,
                       uint64_t target, uint64_t height) const {
  if (!ctx.enforce_token) return;
  const auto& t = ctx.token;
  CDEDIT_ENFORCE(t.request.requester == ctx.editor, ErrorCode::kInvalidToken,
                 "token was issued to '" + t.request.requester + "'");
  CDEDIT_ENFORCE(ctx.now < t.expire, ErrorCode::kExpired,
                 "token " + t.id() + " expired");
  CDEDIT_ENFORCE(ctx.pts.UsesRemaining(t.id()) > 0, ErrorCode::kExhausted,
                 "token " + t.id() + " has no uses left");
  CDEDIT_ENFORCE(ctx.pts.Verify(t, ctx.now), ErrorCode::kInvalidToken,
                 "token " + t.id() + " does not verify");
  CDEDIT_ENFORCE(token::KindCovers(t.kind, type), ErrorCode::kTokenKindMismatch,
                 std::string(token::TokenKindName(t.kind)) +
                     " does not authorize " +
                     std::string(token::EditTypeName(type)) + " edits");
  CDEDIT_ENFORCE(t.Targets(type, target, height), ErrorCode::kTargetMismatch,
                 "token does not name " +
                     std::string(token::EditTypeName(type)) + " target " +
                     std::to_string(target));
}

const EditLogEntry& Chain::Record(EditLogEntry entry) {
  entry.seq = log_.size();
  entry.prev_entry = log_.empty() ? Digest{} : log_.back().entry_hash;
  entry.entry_hash = entry.ComputeHash();
  log_.push_back(std::move(entry));
  return log_.back();
}

const EditLogEntry& Chain::ApplyTxEdit(const EditContext& ctx, uint64_t tx_id,
                                       Bytes new_payload) {
  auto loc = FindTx(tx_id);
  CDEDIT_ENFORCE(loc.has_value(), ErrorCode::kUnknownTarget,
                 "no transaction " + std::to_string(tx_id));
  CheckToken(ctx, token::EditType::kTx, tx_id, loc->height);
  Transaction& tx = blocks_[loc->height].txs[loc->index];
  CDEDIT_ENFORCE(tx.kind == Kind::kMutable, ErrorCode::kImmutableTarget,
                 "transaction " + std::to_string(tx_id) + " is immutable");

  pch::PchTuple adapted =
      pch::Adapt(ctx.pch.hs, ctx.pch.pk, ctx.pch.mpk, ctx.key, *tx.tuple,
                 new_payload, ctx.modifier, ctx.rng);
  if (ctx.enforce_token) ctx.pts.ConsumeUse(ctx.token.id(), ctx.now);

  EditLogEntry e;
  e.type = token::EditType::kTx;
  e.target = tx_id;
  e.block_height = loc->height;
  e.editor = ctx.editor;
  e.editor_level = ctx.pts.Level(ctx.editor);
  e.token_id = ctx.token.id();
  e.time = ctx.now;
  e.old_digest = Sha256(tx.tuple->m);
  e.new_digest = Sha256(adapted.m);
  e.old_tuple = std::move(*tx.tuple);
  e.new_tuple = adapted;
  tx.tuple = std::move(adapted);
  return Record(std::move(e));
}

const EditLogEntry& Chain::ApplyBlEdit(const EditContext& ctx,
                                       uint64_t height,
                                       std::vector<Transaction> new_txs) {
  CDEDIT_ENFORCE(height < blocks_.size(), ErrorCode::kUnknownTarget,
                 "no block at height " + std::to_string(height));
  CheckToken(ctx, token::EditType::kBl, height, height);
  Block& current = blocks_[height];
  CDEDIT_ENFORCE(current.kind == Kind::kMutable, ErrorCode::kImmutableTarget,
                 "block " + std::to_string(height) + " is immutable");

  Block edited = current;
  edited.txs = std::move(new_txs);
  edited.tx_root = MerkleRoot(edited.txs);
  edited.tuple = pch::Adapt(ctx.pch.hs, ctx.pch.pk, ctx.pch.mpk, ctx.key,
                            *current.tuple, edited.Message(), ctx.modifier,
                            ctx.rng);
  CDEDIT_ENFORCE(ValidateBlock(edited, config_, ctx.pch.hs),
                 ErrorCode::kIntegrityFailure,
                 "edited block " + std::to_string(height) +
                     " does not validate");
  const Digest link = edited.Hash();
  CDEDIT_ENFORCE(link == current.Hash(), ErrorCode::kLinkBroken,
                 "block hash changed under edit");
  if (height + 1 < blocks_.size()) {
    CDEDIT_ENFORCE(blocks_[height + 1].prev == link, ErrorCode::kLinkBroken,
                   "successor link broken at height " +
                       std::to_string(height + 1));
  }
  if (ctx.enforce_token) ctx.pts.ConsumeUse(ctx.token.id(), ctx.now);

  EditLogEntry e;
  e.type = token::EditType::kBl;
  e.target = height;
  e.block_height = height;
  e.editor = ctx.editor;
  e.editor_level = ctx.pts.Level(ctx.editor);
  e.token_id = ctx.token.id();
  e.time = ctx.now;
  e.old_digest = Sha256(current.tuple->m);
  e.new_digest = Sha256(edited.tuple->m);
  e.old_tuple = *current.tuple;
  e.new_tuple = *edited.tuple;
  current = std::move(edited);
  return Record(std::move(e));
}

// ---- JSON ------------------------------------------------------------------

nlohmann::json ToJson(const Transaction& tx) {
  nlohmann::json j = {{"id", tx.id}, {"kind", KindName(tx.kind)}};
  if (tx.tuple) {
    j["tuple"] = pch::ToJson(*tx.tuple);
  } else {
    j["payload"] = ToHex(tx.payload);
  }
  return j;
}

Transaction TransactionFromJson(const nlohmann::json& j,
                                const GroupParams& params) {
  Transaction tx;
  tx.id = j.at("id").get<uint64_t>();
  tx.kind = ParseKind(j.at("kind").get<std::string>());
  if (tx.kind == Kind::kMutable) {
    tx.tuple = pch::PchTupleFromJson(j.at("tuple"), params);
  } else {
    tx.payload = FromHex(j.at("payload").get<std::string>());
  }
  return tx;
}

nlohmann::json ToJson(const Block& b) {
  nlohmann::json txs = nlohmann::json::array();
  for (const auto& tx : b.txs) txs.push_back(ToJson(tx));
  nlohmann::json j = {{"height", b.height},
                      {"prev", Hex(b.prev)},
                      {"tx_root", Hex(b.tx_root)},
                      {"ts", b.ts},
                      {"ctr", b.ctr},
                      {"kind", KindName(b.kind)},
                      {"hash", Hex(b.Hash())},
                      {"txs", std::move(txs)}};
  if (b.tuple) j["tuple"] = pch::ToJson(*b.tuple);
  return j;
}

Block BlockFromJson(const nlohmann::json& j, const GroupParams& params) {
  Block b;
  b.height = j.at("height").get<uint64_t>();
  b.prev = DigestFromHex(j.at("prev").get<std::string>());
  b.tx_root = DigestFromHex(j.at("tx_root").get<std::string>());
  b.ts = j.at("ts").get<int64_t>();
  b.ctr = j.at("ctr").get<uint64_t>();
  b.kind = ParseKind(j.at("kind").get<std::string>());
  for (const auto& tj : j.at("txs")) {
    b.txs.push_back(TransactionFromJson(tj, params));
  }
  if (j.contains("tuple")) b.tuple = pch::PchTupleFromJson(j.at("tuple"), params);
  return b;
}

nlohmann::json Chain::ToJson() const {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : blocks_) blocks.push_back(chain::ToJson(b));
  nlohmann::json log = nlohmann::json::array();
  for (const auto& e : log_) log.push_back(chain::ToJson(e));
  return {{"config",
           {{"difficulty", config_.difficulty.get_str(16)},
            {"max_hash_queries", config_.max_hash_queries}}},
          {"next_tx_id", next_tx_id_},
          {"blocks", std::move(blocks)},
          {"log", std::move(log)}};
}

Chain Chain::FromJson(const nlohmann::json& j, const GroupParams& params) {
  try {
    Chain chain;
    const auto& c = j.at("config");
    chain.config_.difficulty.set_str(c.at("difficulty").get<std::string>(), 16);
    chain.config_.max_hash_queries = c.at("max_hash_queries").get<uint64_t>();
    chain.next_tx_id_ = j.at("next_tx_id").get<uint64_t>();
    for (const auto& bj : j.at("blocks")) {
      chain.blocks_.push_back(BlockFromJson(bj, params));
    }
    for (const auto& ej : j.at("log")) {
      chain.log_.push_back(EditLogEntryFromJson(ej, params));
    }
    CDEDIT_ENFORCE(!chain.blocks_.empty(), ErrorCode::kDeserialization,
                   "chain without genesis");
    return chain;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDeserialization, e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kDeserialization, e.what());
  }
}

}  // namespace cdedit::chain
