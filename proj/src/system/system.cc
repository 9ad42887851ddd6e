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

#include "cdedit/system/system.h"

#include <chrono>
#include <cstdio>

namespace cdedit::system {

using token::CredibilityLevel;
using token::EditType;

namespace {

Bytes SeedBytes(const SystemConfig& config) {
  if (!config.seed) return Rng::OsSeeded().Draw(32);
  Bytes out = ToBytes("cdedit/system-seed");
  AppendU64(out, *config.seed);
  return out;
}

nlohmann::json ParamsToJson(const GroupParams& params) {
  return {{"backend", BackendName(params.backend())},
          {"curve", params.curve()},
          {"order", params.order().get_str(16)}};
}

GroupParams ParamsFromJson(const nlohmann::json& j) {
  const Backend backend = ParseBackend(j.at("backend").get<std::string>());
  const mpz_class order(j.at("order").get<std::string>(), 16);
  GroupParams params = backend == Backend::kMock ? GroupParams::Mock(order)
                                                 : GroupParams::Setup(backend);
  CDEDIT_ENFORCE(params.order() == order, ErrorCode::kDeserialization,
                 "group order does not match the recorded parameters");
  return params;
}

nlohmann::json AttributesToJson(const policy::AttributeSet& attributes) {
  return nlohmann::json(attributes);
}

}  // namespace

std::string DeviceId(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "device-%04zu", index);
  return buf;
}

// ---- configuration ---------------------------------------------------------

nlohmann::json ToJson(const SystemConfig& c) {
  nlohmann::json j = {
      {"backend", BackendName(c.backend)},
      {"security_bits", c.security_bits},
      {"seed", nullptr},
      {"devices", c.devices},
      {"identity_length", c.identity_length},
      {"pts",
       {{"base_tx", c.pts.base_tx},
        {"base_bl", c.pts.base_bl},
        {"validity", c.pts.validity}}},
      {"chain",
       {{"difficulty", c.chain.difficulty.get_str()},
        {"max_hash_queries", c.chain.max_hash_queries}}},
      {"genesis_time", c.genesis_time},
      {"audit",
       {{"promotion_threshold", c.audit.promotion_threshold},
        {"reporter_share_percent", c.audit.reporter_share_percent}}}};
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

SystemConfig SystemConfigFromJson(const nlohmann::json& j) {
  SystemConfig c;
  if (j.contains("backend")) {
    c.backend = ParseBackend(j["backend"].get<std::string>());
  }
  c.security_bits = j.value("security_bits", c.security_bits);
  if (j.contains("seed") && !j["seed"].is_null()) {
    c.seed = j["seed"].get<uint64_t>();
  }
  c.devices = j.value("devices", c.devices);
  c.identity_length = j.value("identity_length", c.identity_length);
  if (j.contains("pts")) {
    const auto& p = j["pts"];
    c.pts.base_tx = p.value("base_tx", c.pts.base_tx);
    c.pts.base_bl = p.value("base_bl", c.pts.base_bl);
    c.pts.validity = p.value("validity", c.pts.validity);
  }
  if (j.contains("chain")) {
    const auto& ch = j["chain"];
    if (ch.contains("difficulty")) {
      c.chain.difficulty = mpz_class(ch["difficulty"].get<std::string>());
    }
    c.chain.max_hash_queries =
        ch.value("max_hash_queries", c.chain.max_hash_queries);
  }
  c.genesis_time = j.value("genesis_time", c.genesis_time);
  if (j.contains("audit")) {
    const auto& a = j["audit"];
    c.audit.promotion_threshold =
        a.value("promotion_threshold", c.audit.promotion_threshold);
    c.audit.reporter_share_percent =
        a.value("reporter_share_percent", c.audit.reporter_share_percent);
  }
  CDEDIT_ENFORCE(c.identity_length >= 1, ErrorCode::kInvalidArgument,
                 "identity_length must be positive");
  return c;
}

// ---- state -----------------------------------------------------------------

SystemState::SystemState(SystemConfig config, HashSuite hs, Bytes seed,
                         cpabe::MasterKeys abe, pch::ChameleonKeys ch,
                         token::Pts pts, chain::Chain chain)
    : config_(std::move(config)),
      hs_(std::move(hs)),
      seed_(std::move(seed)),
      clock_(config_.genesis_time),
      abe_(std::move(abe)),
      ch_(std::move(ch)),
      pts_(std::move(pts)),
      chain_(std::move(chain)),
      auditor_(config_.audit) {
  pts_.SetTargetResolver([this](EditType type, uint64_t index, uint32_t n) {
    return chain_.ResolveTarget(type, index, n);
  });
}

std::unique_ptr<SystemState> SystemState::Setup(const SystemConfig& config) {
  GroupParams params = GroupParams::Setup(config.backend, config.security_bits);
  HashSuite hs(params);
  Bytes seed = SeedBytes(config);
  Rng rng(seed);
  Rng setup_rng = rng.Fork("setup");
  auto abe = cpabe::Setup(hs, config.identity_length + 2, setup_rng);
  auto ch = pch::ChameleonKeys::Generate(params, setup_rng);
  auto pts = token::Pts::Create(hs, setup_rng, config.pts);
  auto chain = chain::Chain::Create(config.chain, config.genesis_time);
  std::unique_ptr<SystemState> state(
      new SystemState(config, std::move(hs), std::move(seed), std::move(abe),
                      std::move(ch), std::move(pts), std::move(chain)));
  for (size_t i = 0; i < config.devices; ++i) state->RegisterOwner(DeviceId(i));
  return state;
}

void SystemState::Advance(token::Timestamp seconds) {
  CDEDIT_ENFORCE(seconds >= 0, ErrorCode::kInvalidArgument,
                 "the clock only moves forward");
  clock_ += seconds;
}

Rng SystemState::NextRng() {
  Bytes material = seed_;
  AppendU64(material, draws_++);
  return Rng(material);
}

const Owner& SystemState::RegisterOwner(const std::string& id) {
  CDEDIT_ENFORCE(!id.empty(), ErrorCode::kInvalidArgument, "empty owner id");
  if (auto it = owners_.find(id); it != owners_.end()) return it->second;
  std::optional<cpabe::Identity> identity;
  if (auto m = modifiers_.find(id); m != modifiers_.end()) {
    identity = m->second.identity;
  } else {
    Rng rng = NextRng();
    identity = cpabe::Identity::Random(params(), config_.identity_length, rng);
  }
  Owner o{id, *identity, identity->CredentialInH(abe_.mpk)};
  return owners_.emplace(id, std::move(o)).first->second;
}

const Modifier& SystemState::RegisterModifier(
    const std::string& id, CredibilityLevel level,
    const policy::AttributeSet& attributes, uint64_t balance) {
  CDEDIT_ENFORCE(!id.empty(), ErrorCode::kInvalidArgument, "empty modifier id");
  CDEDIT_ENFORCE(!attributes.empty(), ErrorCode::kEmptyAttributeSet,
                 "modifier '" + id + "' has no attributes");
  std::optional<cpabe::Identity> identity;
  if (auto o = owners_.find(id); o != owners_.end()) {
    identity = o->second.identity;
  } else if (auto m = modifiers_.find(id); m != modifiers_.end()) {
    identity = m->second.identity;
  } else {
    Rng rng = NextRng();
    identity = cpabe::Identity::Random(params(), config_.identity_length, rng);
  }
  pts_.RegisterRequester(id, level, balance);
  Modifier m{id, *identity, attributes, std::nullopt};
  modifiers_.insert_or_assign(id, std::move(m));
  return modifiers_.at(id);
}

const Owner& SystemState::owner(const std::string& id) const {
  auto it = owners_.find(id);
  CDEDIT_ENFORCE(it != owners_.end(), ErrorCode::kUnknownOwner,
                 "unknown owner '" + id + "'");
  return it->second;
}

const Modifier& SystemState::modifier(const std::string& id) const {
  auto it = modifiers_.find(id);
  CDEDIT_ENFORCE(it != modifiers_.end(), ErrorCode::kUnknownModifier,
                 "unknown modifier '" + id + "'");
  return it->second;
}

const cpabe::AttributeKey& SystemState::KeygenFor(
    const std::string& modifier_id, const policy::AttributeSet& attributes) {
  modifier(modifier_id);
  CDEDIT_ENFORCE(!attributes.empty(), ErrorCode::kEmptyAttributeSet,
                 "key requested for an empty attribute set");
  Modifier& m = modifiers_.at(modifier_id);
  Rng rng = NextRng();
  m.key = cpabe::KeyGen(hs_, abe_, attributes, m.identity, rng);
  m.attributes = attributes;
  return *m.key;
}

pch::EditingKey SystemState::EditingKeyFor(
    const std::string& modifier_id) const {
  const Modifier& m = modifier(modifier_id);
  CDEDIT_ENFORCE(m.key.has_value(), ErrorCode::kUnauthorized,
                 "modifier '" + modifier_id + "' holds no attribute key");
  return {ch_.x, *m.key};
}

std::vector<chain::Transaction> SystemState::BuildTxs(
    const std::vector<TxSpec>& txs, const cpabe::Identity& owner,
    const policy::AccessTree& policy, Rng& rng) {
  std::vector<chain::Transaction> out;
  out.reserve(txs.size());
  const auto ctx = pch_context();
  for (const auto& spec : txs) {
    const uint64_t id = chain_.NextTxId();
    out.push_back(spec.is_mutable
                      ? chain::MakeMutableTx(id, ToBytes(spec.payload), ctx,
                                             policy, owner, rng)
                      : chain::MakeImmutableTx(id, ToBytes(spec.payload)));
  }
  return out;
}

const chain::Block& SystemState::Mine(const std::string& owner_id,
                                      const std::string& policy_text,
                                      bool mutable_block,
                                      const std::vector<TxSpec>& txs) {
  const Owner& o = owner(owner_id);
  const policy::AccessTree policy = policy::ParsePolicy(policy_text);
  Rng rng = NextRng();
  auto built = BuildTxs(txs, o.identity, policy, rng);
  const int64_t ts = clock_++;
  if (!mutable_block) return chain_.MineImmutable(std::move(built), ts);
  const auto& block = chain_.MineMutable(std::move(built), ts, pch_context(),
                                         policy, o.identity, rng);
  block_policies_[block.height] = policy_text;
  return block;
}

token::PrivilegeToken SystemState::RequestToken(
    const std::string& modifier_id, EditType type, uint32_t n,
    uint64_t target, std::optional<uint64_t> deposit) {
  modifier(modifier_id);
  Rng rng = NextRng();
  return pts_.TkGen(
      {type, n, modifier_id, target, deposit.value_or(pts_.config().Cost(type, n))},
      clock_, rng);
}

const chain::EditLogEntry& SystemState::EditTx(const std::string& modifier_id,
                                               const std::string& token_id,
                                               uint64_t tx_id,
                                               const std::string& payload,
                                               bool enforce_token) {
  const Modifier& m = modifier(modifier_id);
  const pch::EditingKey key = EditingKeyFor(modifier_id);
  const token::PrivilegeToken t = pts_.Token(token_id);
  const auto pch = pch_context();
  Rng rng = NextRng();
  chain::EditContext ctx{pch, pts_, t,     key, m.identity, modifier_id,
                         clock_, rng, enforce_token};
  return chain_.ApplyTxEdit(ctx, tx_id, ToBytes(payload));
}

const chain::EditLogEntry& SystemState::EditBlock(
    const std::string& modifier_id, const std::string& token_id,
    uint64_t height, const std::vector<TxSpec>& txs, bool enforce_token) {
  const Modifier& m = modifier(modifier_id);
  const pch::EditingKey key = EditingKeyFor(modifier_id);
  const token::PrivilegeToken t = pts_.Token(token_id);
  const auto pch = pch_context();
  Rng rng = NextRng();
  auto it = block_policies_.find(height);
  CDEDIT_ENFORCE(it != block_policies_.end(), ErrorCode::kImmutableTarget,
                 "block " + std::to_string(height) + " is immutable");
  auto built = BuildTxs(txs, m.identity, policy::ParsePolicy(it->second), rng);
  chain::EditContext ctx{pch, pts_, t,     key, m.identity, modifier_id,
                         clock_, rng, enforce_token};
  return chain_.ApplyBlEdit(ctx, height, std::move(built));
}

const audit::AuditRecord& SystemState::Report(uint64_t seq,
                                              const std::string& reporter) {
  audit::AuditRecord r = auditor_.Audit(hs_, chain_, pts_, seq, reporter,
                                        "report-" + std::to_string(audits_.size()));
  auditor_.AdjustLevel(r, pts_);
  audits_.push_back(std::move(r));
  return audits_.back();
}

// ---- persistence -----------------------------------------------------------

nlohmann::json SystemState::ToJson() const {
  nlohmann::json owners = nlohmann::json::array();
  for (const auto& [id, o] : owners_) {
    owners.push_back({{"id", id},
                      {"identity", cpabe::ToJson(o.identity)},
                      {"credential", o.credential.ToHex()}});
  }
  nlohmann::json modifiers = nlohmann::json::array();
  for (const auto& [id, m] : modifiers_) {
    nlohmann::json mj = {{"id", id},
                         {"identity", cpabe::ToJson(m.identity)},
                         {"attributes", AttributesToJson(m.attributes)},
                         {"key", nullptr}};
    if (m.key) mj["key"] = cpabe::ToJson(*m.key);
    modifiers.push_back(std::move(mj));
  }
  nlohmann::json policies = nlohmann::json::object();
  for (const auto& [h, text] : block_policies_) {
    policies[std::to_string(h)] = text;
  }
  nlohmann::json audits = nlohmann::json::array();
  for (const auto& r : audits_) audits.push_back(audit::ToJson(r));
  return {{"config", system::ToJson(config_)},
          {"params", ParamsToJson(params())},
          {"seed", ToHex(seed_)},
          {"draws", draws_},
          {"clock", clock_},
          {"mpk", cpabe::ToJson(abe_.mpk)},
          {"msk", cpabe::ToJson(abe_.msk)},
          {"chameleon", pch::ToJson(ch_)},
          {"pts", pts_.ToJson()},
          {"chain", chain_.ToJson()},
          {"auditor", auditor_.ToJson()},
          {"owners", std::move(owners)},
          {"modifiers", std::move(modifiers)},
          {"block_policies", std::move(policies)},
          {"audits", std::move(audits)}};
}

std::unique_ptr<SystemState> SystemState::FromJson(const nlohmann::json& j) {
  SystemConfig config = SystemConfigFromJson(j.at("config"));
  GroupParams params = ParamsFromJson(j.at("params"));
  HashSuite hs(params);
  cpabe::MasterKeys abe{
      cpabe::MasterPublicKeyFromJson(j.at("mpk"), params),
      cpabe::MasterSecretKeyFromJson(j.at("msk"), params)};
  auto ch = pch::ChameleonKeysFromJson(j.at("chameleon"), params);
  auto pts = token::Pts::FromJson(j.at("pts"), hs);
  auto chain = chain::Chain::FromJson(j.at("chain"), params);
  std::unique_ptr<SystemState> s(new SystemState(
      config, hs, FromHex(j.at("seed").get<std::string>()), std::move(abe),
      std::move(ch), std::move(pts), std::move(chain)));
  s->draws_ = j.at("draws").get<uint64_t>();
  s->clock_ = j.at("clock").get<token::Timestamp>();
  s->auditor_ = audit::Auditor::FromJson(j.at("auditor"));
  for (const auto& oj : j.at("owners")) {
    Owner o{oj.at("id").get<std::string>(),
            cpabe::IdentityFromJson(oj.at("identity"), params),
            params.G2FromHex(oj.at("credential").get<std::string>())};
    CDEDIT_ENFORCE(o.credential == o.identity.CredentialInH(s->abe_.mpk),
                   ErrorCode::kDeserialization,
                   "owner '" + o.id + "' credential does not match identity");
    s->owners_.emplace(o.id, std::move(o));
  }
  for (const auto& mj : j.at("modifiers")) {
    Modifier m{mj.at("id").get<std::string>(),
               cpabe::IdentityFromJson(mj.at("identity"), params),
               mj.at("attributes").get<policy::AttributeSet>(), std::nullopt};
    if (!mj.at("key").is_null()) {
      m.key = cpabe::AttributeKeyFromJson(mj.at("key"), params);
    }
    s->modifiers_.emplace(m.id, std::move(m));
  }
  for (const auto& [h, text] : j.at("block_policies").items()) {
    s->block_policies_[std::stoull(h)] = text.get<std::string>();
  }
  for (const auto& rj : j.at("audits")) {
    s->audits_.push_back(audit::AuditRecordFromJson(rj));
  }
  return s;
}

// ---- scenarios -------------------------------------------------------------

namespace {

std::vector<TxSpec> TxSpecs(const nlohmann::json& j) {
  std::vector<TxSpec> out;
  for (const auto& t : j) {
    if (t.is_string()) {
      out.push_back({t.get<std::string>(), true});
    } else {
      out.push_back({t.at("payload").get<std::string>(),
                     t.value("mutable", true)});
    }
  }
  return out;
}

// A transaction named by id, or by [height, slot].
uint64_t ResolveTx(const SystemState& s, const nlohmann::json& ref) {
  if (ref.is_number_unsigned()) return ref.get<uint64_t>();
  CDEDIT_ENFORCE(ref.is_array() && ref.size() == 2, ErrorCode::kInvalidArgument,
                 "tx must be an id or [height, slot]");
  const auto& block = s.chain().block(ref[0].get<uint64_t>());
  const auto slot = ref[1].get<size_t>();
  CDEDIT_ENFORCE(slot < block.txs.size(), ErrorCode::kUnknownTarget,
                 "no transaction slot " + std::to_string(slot));
  return block.txs[slot].id;
}

class Runner {
 public:
  explicit Runner(SystemState& s) : s_(s) {}

  nlohmann::json Step(const nlohmann::json& step) {
    const std::string op = step.at("op").get<std::string>();
    if (op == "register_owner") {
      const auto& o = s_.RegisterOwner(step.at("id").get<std::string>());
      return {{"owner", o.id}};
    }
    if (op == "register_modifier") {
      const auto& m = s_.RegisterModifier(
          step.at("id").get<std::string>(),
          token::ParseLevel(step.value("level", std::string("m_1T"))),
          step.at("attributes").get<policy::AttributeSet>(),
          step.value("balance", uint64_t{0}));
      return {{"modifier", m.id}};
    }
    if (op == "keygen") {
      const auto id = step.at("modifier").get<std::string>();
      const auto attributes =
          step.contains("attributes")
              ? step["attributes"].get<policy::AttributeSet>()
              : s_.modifier(id).attributes;
      const auto& key = s_.KeygenFor(id, attributes);
      return {{"modifier", id}, {"components", key.ComponentCount()}};
    }
    if (op == "mine") {
      const auto& b = s_.Mine(step.at("owner").get<std::string>(),
                              step.at("policy").get<std::string>(),
                              step.value("mutable", false),
                              TxSpecs(step.at("txs")));
      nlohmann::json ids = nlohmann::json::array();
      for (const auto& tx : b.txs) ids.push_back(tx.id);
      return {{"height", b.height}, {"tx_ids", ids}, {"ctr", b.ctr},
              {"hash", ToHex(b.Hash())}};
    }
    if (op == "request_token") {
      const auto type = token::ParseEditType(step.at("type").get<std::string>());
      uint64_t target = 0;
      if (type == EditType::kTx) {
        target = ResolveTx(s_, step.at("target"));
      } else {
        target = step.at("target").get<uint64_t>();
      }
      std::optional<uint64_t> deposit;
      if (step.contains("deposit")) deposit = step["deposit"].get<uint64_t>();
      auto t = s_.RequestToken(step.at("modifier").get<std::string>(), type,
                               step.value("n", uint32_t{1}), target, deposit);
      if (step.contains("as")) aliases_[step["as"].get<std::string>()] = t.id();
      return {{"token", t.id()},
              {"kind", token::TokenKindName(t.kind)},
              {"expire", t.expire}};
    }
    if (op == "verify_token") {
      const auto t = s_.pts().Token(TokenId(step.at("token")));
      return {{"valid", token::VerifyToken(s_.hash_suite(), t, s_.pts().pk(),
                                           s_.now())}};
    }
    if (op == "edit_tx") {
      const auto& e = s_.EditTx(step.at("modifier").get<std::string>(),
                                TokenId(step.at("token")),
                                ResolveTx(s_, step.at("tx")),
                                step.at("payload").get<std::string>(),
                                step.value("enforce_token", true));
      return EntrySummary(e);
    }
    if (op == "edit_block") {
      const auto& e = s_.EditBlock(step.at("modifier").get<std::string>(),
                                   TokenId(step.at("token")),
                                   step.at("height").get<uint64_t>(),
                                   TxSpecs(step.at("txs")),
                                   step.value("enforce_token", true));
      return EntrySummary(e);
    }
    if (op == "verify_tx") {
      const auto& tx = s_.chain().tx(ResolveTx(s_, step.at("tx")));
      const bool ok = tx.tuple && pch::Verify(s_.hash_suite(), *tx.tuple);
      return {{"valid", ok}};
    }
    if (op == "validate") {
      return {{"valid", s_.chain().Validate(s_.hash_suite())},
              {"height", s_.chain().size() - 1}};
    }
    if (op == "audit") {
      uint64_t seq = 0;
      const auto& ref = step.at("seq");
      if (ref.is_string()) {
        CDEDIT_ENFORCE(ref == "last" && !s_.chain().log().empty(),
                       ErrorCode::kMissingLog, "no edit to audit");
        seq = s_.chain().log().size() - 1;
      } else {
        seq = ref.get<uint64_t>();
      }
      const auto& r = s_.Report(seq, step.value("reporter", std::string("ca")));
      return audit::ToJson(r);
    }
    if (op == "advance") {
      s_.Advance(step.at("seconds").get<token::Timestamp>());
      return {{"now", s_.now()}};
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown op '" + op + "'");
  }

 private:
  std::string TokenId(const nlohmann::json& ref) const {
    const auto name = ref.get<std::string>();
    auto it = aliases_.find(name);
    return it == aliases_.end() ? name : it->second;
  }

  static nlohmann::json EntrySummary(const chain::EditLogEntry& e) {
    return {{"seq", e.seq},
            {"type", token::EditTypeName(e.type)},
            {"target", e.target},
            {"token", e.token_id},
            {"entry_hash", ToHex(e.entry_hash)}};
  }

  SystemState& s_;
  std::map<std::string, std::string> aliases_;
};

}  // namespace

Transcript RunScenario(SystemState& state, const nlohmann::json& steps) {
  CDEDIT_ENFORCE(steps.is_array(), ErrorCode::kInvalidArgument,
                 "a scenario is an array of steps");
  Runner runner(state);
  Transcript transcript;
  for (size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    StepResult r;
    r.index = i;
    r.op = step.value("op", std::string());
    const std::optional<std::string> expected =
        step.contains("expect_error")
            ? std::optional(step["expect_error"].get<std::string>())
            : std::nullopt;
    const auto start = std::chrono::steady_clock::now();
    auto fail = [&](ErrorCode code, const std::string& what) {
      throw StepFailure(i, code,
                        "step " + std::to_string(i) + " (" + r.op + "): " + what);
    };
    try {
      r.output = runner.Step(step);
      if (expected) {
        fail(ErrorCode::kInvalidArgument,
             "expected " + *expected + " but the step succeeded");
      }
    } catch (const StepFailure&) {
      throw;
    } catch (const Error& e) {
      if (!expected || *expected != ErrorCodeName(e.code())) {
        fail(e.code(), e.what());
      }
      r.ok = false;
      r.error = std::string(ErrorCodeName(e.code()));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kInvalidArgument, e.what());
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    transcript.steps.push_back(std::move(r));
  }
  return transcript;
}

nlohmann::json Transcript::ToJson(bool include_timings) const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json j = {{"step", s.index},
                        {"op", s.op},
                        {"ok", s.ok},
                        {"output", s.output}};
    if (s.error) j["error"] = *s.error;
    if (include_timings) j["elapsed_ms"] = s.elapsed_ms;
    out.push_back(std::move(j));
  }
  return out;
}

std::pair<std::unique_ptr<SystemState>, Transcript> RunScript(
    const nlohmann::json& script) {
  SystemConfig config;
  config.seed = 0;
  const nlohmann::json* steps = &script;
  if (script.is_object()) {
    if (script.contains("config")) {
      config = SystemConfigFromJson(script["config"]);
      if (!script["config"].contains("seed")) config.seed = 0;
    }
    steps = &script.at("steps");
  }
  auto state = SystemState::Setup(config);
  Transcript t = RunScenario(*state, *steps);
  return {std::move(state), std::move(t)};
}

}  // namespace cdedit::system
