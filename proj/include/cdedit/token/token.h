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
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "cdedit/bilinear/group.h"
#include "cdedit/bilinear/hash_suite.h"
#include "json.hpp"

// Privilege token service: edit requests, deposits, Schnorr-style token
// issuance and verification, and n-times usage accounting.
namespace cdedit::token {

using Timestamp = int64_t;  // simulated seconds

enum class EditType { kTx, kBl };

// Ordered by edit permission: T_1tk < T_ntk < B_1tk < B_ntk.
enum class TokenKind { kT1, kTn, kB1, kBn };

// Modifier credibility, smallest to largest. kEjected holds no privilege.
enum class CredibilityLevel { kEjected, kM1T, kMnT, kM1B, kMnB };

std::string_view EditTypeName(EditType type);
EditType ParseEditType(std::string_view text);
std::string_view TokenKindName(TokenKind kind);
TokenKind ParseTokenKind(std::string_view text);
std::string_view LevelName(CredibilityLevel level);
CredibilityLevel ParseLevel(std::string_view text);

TokenKind KindFor(EditType type, uint32_t n);
bool IsBlockKind(TokenKind kind);
// Largest token kind a modifier at `level` may hold.
std::optional<TokenKind> MaxKind(CredibilityLevel level);
bool LevelAllows(CredibilityLevel level, TokenKind kind);
// Whether a token of `kind` may authorize an edit of `type`. Block tokens
// also cover transaction edits; transaction tokens never cover blocks.
bool KindCovers(TokenKind kind, EditType type);

struct EditRequest {
  EditType type = EditType::kTx;
  uint32_t n = 1;
  std::string requester;
  uint64_t index = 0;  // transaction id, or first block height
  uint64_t deposit = 0;

  friend bool operator==(const EditRequest&, const EditRequest&) = default;
};

struct PrivilegeToken {
  EditRequest request;
  Timestamp time = 0;
  Timestamp expire = 0;
  TokenKind kind = TokenKind::kT1;
  G1 kg;
  Scalar sigma;
  uint32_t uses_remaining = 0;  // display mirror; the service is authoritative

  std::string id() const;
  // Whether the token names `target` for an edit of `type`: the bound
  // transaction, or a block within [index, index + n) for block tokens.
  bool Targets(EditType type, uint64_t target_index,
               std::optional<uint64_t> block_height = std::nullopt) const;
};

// Canonical signed body of a token, excluding pk, kg and deposit.
Bytes EncodeRequest(const PrivilegeToken& token);
// H2(pk_pts || req_tk || kg || deposit), length-prefixed.
Scalar TokenChallenge(const HashSuite& hs, const G1& pk_pts,
                      const PrivilegeToken& token);

// Signature, expiry and the mirrored use counter.
bool VerifyToken(const HashSuite& hs, const PrivilegeToken& token,
                 const G1& pk_pts, Timestamp now);

nlohmann::json ToJson(const PrivilegeToken& token);
PrivilegeToken TokenFromJson(const nlohmann::json& j,
                             const GroupParams& params);

// Balances, per-token escrow and the burned total. Every unit ever credited
// is in exactly one of the three places.
class DepositLedger {
 public:
  void Credit(const std::string& account, uint64_t amount);
  uint64_t Balance(const std::string& account) const;
  bool HasAccount(const std::string& account) const;

  void Escrow(const std::string& account, const std::string& token_id,
              uint64_t amount);
  uint64_t Escrowed(const std::string& token_id) const;
  // Returns the escrow to its owner.
  uint64_t Release(const std::string& token_id);
  struct Settlement {
    uint64_t to_reporter = 0;
    uint64_t burned = 0;
  };
  // Splits the escrow: `reporter_share_percent` to the reporter, the rest
  // burned.
  Settlement Slash(const std::string& token_id, const std::string& reporter,
                   uint32_t reporter_share_percent);

  uint64_t minted() const { return minted_; }
  uint64_t burned() const { return burned_; }
  uint64_t TotalBalances() const;
  uint64_t TotalEscrow() const;
  bool Conserved() const {
    return TotalBalances() + TotalEscrow() + burned_ == minted_;
  }

  nlohmann::json ToJson() const;
  static DepositLedger FromJson(const nlohmann::json& j);

 private:
  struct EscrowEntry {
    std::string account;
    uint64_t amount;
  };
  std::map<std::string, uint64_t> balances_;
  std::map<std::string, EscrowEntry> escrow_;
  uint64_t minted_ = 0;
  uint64_t burned_ = 0;
};

struct PtsConfig {
  uint64_t base_tx = 1;
  uint64_t base_bl = 10;
  Timestamp validity = 24 * 3600;

  uint64_t Cost(EditType type, uint32_t n) const {
    return (type == EditType::kTx ? base_tx : base_bl) * n;
  }
};

// The token service. All mutating calls serialize on one mutex.
class Pts {
 public:
  // Decides whether a request's target exists (transaction id or the block
  // range index..index+n-1).
  using TargetResolver = std::function<bool(EditType, uint64_t, uint32_t)>;

  Pts(HashSuite hs, Scalar sk, PtsConfig config = {});
  static Pts Create(const HashSuite& hs, Rng& rng, PtsConfig config = {});
  Pts(Pts&& other) noexcept;
  Pts& operator=(Pts&&) = delete;

  const G1& pk() const { return pk_; }
  const Scalar& sk() const { return sk_; }
  const PtsConfig& config() const { return config_; }
  const HashSuite& hash_suite() const { return hs_; }

  void SetTargetResolver(TargetResolver resolver);
  void RegisterRequester(const std::string& id, CredibilityLevel level,
                         uint64_t balance);
  bool IsRegistered(const std::string& id) const;
  CredibilityLevel Level(const std::string& id) const;
  void SetLevel(const std::string& id, CredibilityLevel level);

  // Throws UnknownRequester, UnknownTarget, LevelTooLow, InsufficientDeposit.
  PrivilegeToken TkGen(const EditRequest& request, Timestamp now, Rng& rng);

  // VerifyToken against the authoritative counter.
  bool Verify(const PrivilegeToken& token, Timestamp now) const;
  // Atomically decrements; throws UnknownToken, Expired or Exhausted.
  uint32_t ConsumeUse(const std::string& token_id, Timestamp now);
  uint32_t UsesRemaining(const std::string& token_id) const;
  PrivilegeToken Token(const std::string& token_id) const;

  DepositLedger::Settlement Slash(const std::string& token_id,
                                  const std::string& reporter,
                                  uint32_t reporter_share_percent);
  uint64_t Refund(const std::string& token_id);

  DepositLedger LedgerSnapshot() const;

  nlohmann::json ToJson() const;
  static Pts FromJson(const nlohmann::json& j, const HashSuite& hs);

 private:
  struct Issued {
    PrivilegeToken token;
    uint32_t uses_remaining;
  };

  HashSuite hs_;
  Scalar sk_;
  G1 pk_;
  PtsConfig config_;
  TargetResolver resolver_;
  mutable std::mutex mu_;
  std::map<std::string, CredibilityLevel> levels_;
  DepositLedger ledger_;
  std::map<std::string, Issued> tokens_;
};

}  // namespace cdedit::token
