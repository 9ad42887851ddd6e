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
#include <string>
#include <vector>

#include "cdedit/audit/audit.h"
#include "cdedit/chain/chain.h"
#include "cdedit/cpabe/cpabe.h"
#include "cdedit/error.h"
#include "cdedit/pch/pch.h"
#include "cdedit/policy/policy.h"
#include "cdedit/token/token.h"
#include "json.hpp"

// One authority, one token service, owners, modifiers and the chain they
// share, with a scripted driver over the edit workflow.
namespace cdedit::system {

struct SystemConfig {
  Backend backend = Backend::kReal;
  int security_bits = GroupParams::kDefaultSecurityBits;
  // Unset draws the seed from the operating system.
  std::optional<uint64_t> seed;
  // Owner devices registered during setup, named device-0000, device-0001...
  size_t devices = 10;
  size_t identity_length = 2;
  token::PtsConfig pts;
  chain::ChainConfig chain;
  token::Timestamp genesis_time = 1'700'000'000;
  audit::AuditPolicy audit;
};

nlohmann::json ToJson(const SystemConfig& config);
// Missing keys keep their defaults.
SystemConfig SystemConfigFromJson(const nlohmann::json& j);

struct Owner {
  std::string id;
  cpabe::Identity identity;
  G2 credential;  // published H-side credential
};

struct Modifier {
  std::string id;
  cpabe::Identity identity;
  policy::AttributeSet attributes;
  std::optional<cpabe::AttributeKey> key;
};

struct TxSpec {
  std::string payload;
  bool is_mutable = true;
};

class SystemState {
 public:
  static std::unique_ptr<SystemState> Setup(const SystemConfig& config);

  SystemState(const SystemState&) = delete;
  SystemState& operator=(const SystemState&) = delete;

  const SystemConfig& config() const { return config_; }
  const GroupParams& params() const { return hs_.params(); }
  const HashSuite& hash_suite() const { return hs_; }
  const cpabe::MasterKeys& abe() const { return abe_; }
  const pch::ChameleonKeys& chameleon() const { return ch_; }
  token::Pts& pts() { return pts_; }
  const token::Pts& pts() const { return pts_; }
  chain::Chain& chain() { return chain_; }
  const chain::Chain& chain() const { return chain_; }
  audit::Auditor& auditor() { return auditor_; }
  const std::vector<audit::AuditRecord>& audits() const { return audits_; }
  chain::PchContext pch_context() const { return {hs_, ch_.pk, abe_.mpk}; }

  // Logical clock, never read from the host. Ticks once per mined block.
  token::Timestamp now() const { return clock_; }
  void Advance(token::Timestamp seconds);

  // Fresh deterministic stream derived from the seed and a draw counter.
  Rng NextRng();

  const Owner& RegisterOwner(const std::string& id);
  // Throws EmptyAttributeSet. An owner id may also register as a modifier and
  // keeps its identity.
  const Modifier& RegisterModifier(const std::string& id,
                                   token::CredibilityLevel level,
                                   const policy::AttributeSet& attributes,
                                   uint64_t balance);
  const Owner& owner(const std::string& id) const;        // UnknownOwner
  const Modifier& modifier(const std::string& id) const;  // UnknownModifier
  const std::map<std::string, Owner>& owners() const { return owners_; }
  const std::map<std::string, Modifier>& modifiers() const { return modifiers_; }

  // Issues and archives the modifier's key. Throws UnknownModifier,
  // EmptyAttributeSet.
  const cpabe::AttributeKey& KeygenFor(const std::string& modifier_id,
                                       const policy::AttributeSet& attributes);
  // (x, sk_theta); throws UnknownModifier, or Unauthorized without a key.
  pch::EditingKey EditingKeyFor(const std::string& modifier_id) const;

  const chain::Block& Mine(const std::string& owner_id,
                           const std::string& policy_text, bool mutable_block,
                           const std::vector<TxSpec>& txs);
  token::PrivilegeToken RequestToken(const std::string& modifier_id,
                                     token::EditType type, uint32_t n,
                                     uint64_t target,
                                     std::optional<uint64_t> deposit = {});
  const chain::EditLogEntry& EditTx(const std::string& modifier_id,
                                    const std::string& token_id,
                                    uint64_t tx_id, const std::string& payload,
                                    bool enforce_token = true);
  const chain::EditLogEntry& EditBlock(const std::string& modifier_id,
                                       const std::string& token_id,
                                       uint64_t height,
                                       const std::vector<TxSpec>& txs,
                                       bool enforce_token = true);
  // Audits log entry `seq` and applies the level policy.
  const audit::AuditRecord& Report(uint64_t seq, const std::string& reporter);

  nlohmann::json ToJson() const;
  static std::unique_ptr<SystemState> FromJson(const nlohmann::json& j);

 private:
  SystemState(SystemConfig config, HashSuite hs, Bytes seed,
              cpabe::MasterKeys abe, pch::ChameleonKeys ch, token::Pts pts,
              chain::Chain chain);

  std::vector<chain::Transaction> BuildTxs(const std::vector<TxSpec>& txs,
                                           const cpabe::Identity& owner,
                                           const policy::AccessTree& policy,
                                           Rng& rng);

  SystemConfig config_;
  HashSuite hs_;
  Bytes seed_;
  uint64_t draws_ = 0;
  token::Timestamp clock_ = 0;
  cpabe::MasterKeys abe_;
  pch::ChameleonKeys ch_;
  token::Pts pts_;
  chain::Chain chain_;
  audit::Auditor auditor_;
  std::map<std::string, Owner> owners_;
  std::map<std::string, Modifier> modifiers_;
  std::map<uint64_t, std::string> block_policies_;
  std::vector<audit::AuditRecord> audits_;
};

std::string DeviceId(size_t index);

// ---- scenarios -------------------------------------------------------------

struct StepResult {
  size_t index = 0;
  std::string op;
  bool ok = true;
  std::optional<std::string> error;  // error code name when expected
  nlohmann::json output;
  double elapsed_ms = 0;
};

// ScenarioStep failure carrying the failing step and the underlying code.
class StepFailure : public Error {
 public:
  StepFailure(size_t step, ErrorCode cause, const std::string& what)
      : Error(ErrorCode::kScenarioStep, what), step_(step), cause_(cause) {}

  size_t step() const { return step_; }
  ErrorCode cause() const { return cause_; }

 private:
  size_t step_;
  ErrorCode cause_;
};

struct Transcript {
  std::vector<StepResult> steps;

  // Without timings the transcript is byte-for-byte reproducible.
  nlohmann::json ToJson(bool include_timings = true) const;
};

// Runs the steps of `script` in order. Each step is an object with an "op"
// and its arguments; a step may name "expect_error" with an error code name.
// A failing step throws StepFailure.
Transcript RunScenario(SystemState& state, const nlohmann::json& steps);

// A script is either an array of steps (default configuration, seed 0) or an
// object with "config" and "steps".
std::pair<std::unique_ptr<SystemState>, Transcript> RunScript(
    const nlohmann::json& script);

}  // namespace cdedit::system
