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

#include "cdedit/token/token.h"

#include <array>
#include <utility>

#include "cdedit/error.h"

namespace cdedit::token {

namespace {

constexpr std::array<std::string_view, 2> kTypeNames{"tx", "bl"};
constexpr std::array<std::string_view, 4> kKindNames{"T_1tk", "T_ntk", "B_1tk",
                                                     "B_ntk"};
constexpr std::array<std::string_view, 5> kLevelNames{"ejected", "m_1T",
                                                      "m_nT", "m_1B", "m_nB"};

template <class E, size_t N>
E ParseName(const std::array<std::string_view, N>& names,
            std::string_view text, const char* what) {
  for (size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<E>(i);
  }
  throw Error(ErrorCode::kInvalidArgument,
              std::string("unknown ") + what + " '" + std::string(text) + "'");
}

}  // namespace

std::string_view EditTypeName(EditType type) {
  return kTypeNames[static_cast<size_t>(type)];
}
EditType ParseEditType(std::string_view text) {
  return ParseName<EditType>(kTypeNames, text, "edit type");
}
std::string_view TokenKindName(TokenKind kind) {
  return kKindNames[static_cast<size_t>(kind)];
}
TokenKind ParseTokenKind(std::string_view text) {
  return ParseName<TokenKind>(kKindNames, text, "token kind");
}
std::string_view LevelName(CredibilityLevel level) {
  return kLevelNames[static_cast<size_t>(level)];
}
CredibilityLevel ParseLevel(std::string_view text) {
  return ParseName<CredibilityLevel>(kLevelNames, text, "credibility level");
}

TokenKind KindFor(EditType type, uint32_t n) {
  CDEDIT_ENFORCE(n >= 1, ErrorCode::kInvalidArgument, "edit count must be >= 1");
  if (type == EditType::kTx) return n == 1 ? TokenKind::kT1 : TokenKind::kTn;
  return n == 1 ? TokenKind::kB1 : TokenKind::kBn;
}

bool IsBlockKind(TokenKind kind) {
  return kind == TokenKind::kB1 || kind == TokenKind::kBn;
}

std::optional<TokenKind> MaxKind(CredibilityLevel level) {
  switch (level) {
    case CredibilityLevel::kEjected:
      return std::nullopt;
    case CredibilityLevel::kM1T:
      return TokenKind::kT1;
    case CredibilityLevel::kMnT:
      return TokenKind::kTn;
    case CredibilityLevel::kM1B:
      return TokenKind::kB1;
    case CredibilityLevel::kMnB:
      return TokenKind::kBn;
  }
  return std::nullopt;
}

bool LevelAllows(CredibilityLevel level, TokenKind kind) {
  auto max = MaxKind(level);
  return max.has_value() && kind <= *max;
}

bool KindCovers(TokenKind kind, EditType type) {
  return type == EditType::kTx || IsBlockKind(kind);
}

// ---- token -----------------------------------------------------------------

std::string PrivilegeToken::id() const {
  Digest d = Sha256({AsBytes("cdedit/token-id"), kg.ToBytes()});
  return ToHex(ByteSpan(d.data(), 16));
}

bool PrivilegeToken::Targets(EditType type, uint64_t target_index,
                             std::optional<uint64_t> block_height) const {
  if (!KindCovers(kind, type)) return false;
  auto in_range = [&](uint64_t height) {
    return height >= request.index && height - request.index < request.n;
  };
  if (type == EditType::kBl) return in_range(target_index);
  if (!IsBlockKind(kind)) return target_index == request.index;
  return block_height.has_value() && in_range(*block_height);
}

Bytes EncodeRequest(const PrivilegeToken& t) {
  FieldWriter w;
  w.Add(EditTypeName(t.request.type));
  w.AddU64(t.request.n);
  w.Add(t.request.requester);
  w.AddU64(t.request.index);
  w.AddU64(static_cast<uint64_t>(t.expire));
  w.AddU64(static_cast<uint64_t>(t.time));
  return w.Take();
}

Scalar TokenChallenge(const HashSuite& hs, const G1& pk_pts,
                      const PrivilegeToken& t) {
  FieldWriter w;
  w.Add(pk_pts.ToBytes());
  w.Add(EncodeRequest(t));
  w.Add(t.kg.ToBytes());
  w.AddU64(t.request.deposit);
  return hs.H2(w.bytes());
}

bool VerifyToken(const HashSuite& hs, const PrivilegeToken& t,
                 const G1& pk_pts, Timestamp now) {
  if (now >= t.expire || t.uses_remaining == 0) return false;
  if (t.request.n == 0 || t.kind != KindFor(t.request.type, t.request.n)) {
    return false;
  }
  try {
    Scalar c = TokenChallenge(hs, pk_pts, t);
    return hs.params().g().Pow(t.sigma) == t.kg * pk_pts.Pow(c);
  } catch (const Error&) {
    return false;
  }
}

nlohmann::json ToJson(const PrivilegeToken& t) {
  return {{"id", t.id()},
          {"type", EditTypeName(t.request.type)},
          {"n", t.request.n},
          {"requester", t.request.requester},
          {"index", t.request.index},
          {"deposit", t.request.deposit},
          {"time", t.time},
          {"expire", t.expire},
          {"kind", TokenKindName(t.kind)},
          {"kg", t.kg.ToHex()},
          {"sigma", t.sigma.ToDecimal()},
          {"uses_remaining", t.uses_remaining}};
}

PrivilegeToken TokenFromJson(const nlohmann::json& j,
                             const GroupParams& params) {
  try {
    PrivilegeToken t;
    t.request.type = ParseEditType(j.at("type").get<std::string>());
    t.request.n = j.at("n").get<uint32_t>();
    t.request.requester = j.at("requester").get<std::string>();
    t.request.index = j.at("index").get<uint64_t>();
    t.request.deposit = j.at("deposit").get<uint64_t>();
    t.time = j.at("time").get<Timestamp>();
    t.expire = j.at("expire").get<Timestamp>();
    t.kind = ParseTokenKind(j.at("kind").get<std::string>());
    t.kg = params.G1FromHex(j.at("kg").get<std::string>());
    t.sigma = Scalar::FromDecimal(params.field(),
                                  j.at("sigma").get<std::string>());
    t.uses_remaining = j.at("uses_remaining").get<uint32_t>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kDeserialization, e.what());
  }
}

// ---- ledger ----------------------------------------------------------------

void DepositLedger::Credit(const std::string& account, uint64_t amount) {
  balances_[account] += amount;
  minted_ += amount;
}

uint64_t DepositLedger::Balance(const std::string& account) const {
  auto it = balances_.find(account);
  return it == balances_.end() ? 0 : it->second;
}

bool DepositLedger::HasAccount(const std::string& account) const {
  return balances_.contains(account);
}

void DepositLedger::Escrow(const std::string& account,
                           const std::string& token_id, uint64_t amount) {
  auto it = balances_.find(account);
  CDEDIT_ENFORCE(it != balances_.end(), ErrorCode::kUnknownRequester,
                 "no account '" + account + "'");
  CDEDIT_ENFORCE(it->second >= amount, ErrorCode::kInsufficientDeposit,
                 "balance " + std::to_string(it->second) +
                     " cannot cover deposit " + std::to_string(amount));
  CDEDIT_ENFORCE(!escrow_.contains(token_id), ErrorCode::kInvalidArgument,
                 "escrow already held for token " + token_id);
  it->second -= amount;
  escrow_[token_id] = {account, amount};
}

uint64_t DepositLedger::Escrowed(const std::string& token_id) const {
  auto it = escrow_.find(token_id);
  return it == escrow_.end() ? 0 : it->second.amount;
}

uint64_t DepositLedger::Release(const std::string& token_id) {
  auto it = escrow_.find(token_id);
  if (it == escrow_.end()) return 0;
  uint64_t amount = it->second.amount;
  balances_[it->second.account] += amount;
  escrow_.erase(it);
  return amount;
}

DepositLedger::Settlement DepositLedger::Slash(const std::string& token_id,
                                               const std::string& reporter,
                                               uint32_t percent) {
  CDEDIT_ENFORCE(percent <= 100, ErrorCode::kInvalidArgument,
                 "reporter share above 100%");
  auto it = escrow_.find(token_id);
  if (it == escrow_.end()) return {};
  Settlement s;
  s.to_reporter = it->second.amount * percent / 100;
  s.burned = it->second.amount - s.to_reporter;
  balances_[reporter] += s.to_reporter;
  burned_ += s.burned;
  escrow_.erase(it);
  return s;
}

uint64_t DepositLedger::TotalBalances() const {
  uint64_t total = 0;
  for (const auto& [_, v] : balances_) total += v;
  return total;
}

uint64_t DepositLedger::TotalEscrow() const {
  uint64_t total = 0;
  for (const auto& [_, e] : escrow_) total += e.amount;
  return total;
}

nlohmann::json DepositLedger::ToJson() const {
  nlohmann::json escrow = nlohmann::json::object();
  for (const auto& [id, e] : escrow_) {
    escrow[id] = {{"account", e.account}, {"amount", e.amount}};
  }
  return {{"balances", balances_},
          {"escrow", std::move(escrow)},
          {"minted", minted_},
          {"burned", burned_}};
}

DepositLedger DepositLedger::FromJson(const nlohmann::json& j) {
  DepositLedger l;
  l.balances_ = j.at("balances").get<std::map<std::string, uint64_t>>();
  for (const auto& [id, e] : j.at("escrow").items()) {
    l.escrow_[id] = {e.at("account").get<std::string>(),
                     e.at("amount").get<uint64_t>()};
  }
  l.minted_ = j.at("minted").get<uint64_t>();
  l.burned_ = j.at("burned").get<uint64_t>();
  CDEDIT_ENFORCE(l.Conserved(), ErrorCode::kDeserialization,
                 "ledger totals do not balance");
  return l;
}

// ---- service ---------------------------------------------------------------

Pts::Pts(HashSuite hs, Scalar sk, PtsConfig config)
    : hs_(std::move(hs)),
      sk_(std::move(sk)),
      pk_(hs_.params().g().Pow(sk_)),
      config_(config) {}

Pts::Pts(Pts&& o) noexcept
    : hs_(std::move(o.hs_)),
      sk_(std::move(o.sk_)),
      pk_(std::move(o.pk_)),
      config_(o.config_),
      resolver_(std::move(o.resolver_)),
      levels_(std::move(o.levels_)),
      ledger_(std::move(o.ledger_)),
      tokens_(std::move(o.tokens_)) {}

Pts Pts::Create(const HashSuite& hs, Rng& rng, PtsConfig config) {
  return Pts(hs, hs.params().RandomNonZero(rng), config);
}

void Pts::SetTargetResolver(TargetResolver resolver) {
  std::lock_guard lock(mu_);
  resolver_ = std::move(resolver);
}

void Pts::RegisterRequester(const std::string& id, CredibilityLevel level,
                            uint64_t balance) {
  std::lock_guard lock(mu_);
  levels_[id] = level;
  ledger_.Credit(id, balance);
}

bool Pts::IsRegistered(const std::string& id) const {
  std::lock_guard lock(mu_);
  return levels_.contains(id);
}

CredibilityLevel Pts::Level(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = levels_.find(id);
  CDEDIT_ENFORCE(it != levels_.end(), ErrorCode::kUnknownRequester,
                 "unknown requester '" + id + "'");
  return it->second;
}

void Pts::SetLevel(const std::string& id, CredibilityLevel level) {
  std::lock_guard lock(mu_);
  auto it = levels_.find(id);
  CDEDIT_ENFORCE(it != levels_.end(), ErrorCode::kUnknownRequester,
                 "unknown requester '" + id + "'");
  it->second = level;
}

PrivilegeToken Pts::TkGen(const EditRequest& request, Timestamp now,
                          Rng& rng) {
  std::lock_guard lock(mu_);
  auto level = levels_.find(request.requester);
  CDEDIT_ENFORCE(level != levels_.end(), ErrorCode::kUnknownRequester,
                 "unknown requester '" + request.requester + "'");
  const TokenKind kind = KindFor(request.type, request.n);
  CDEDIT_ENFORCE(!resolver_ || resolver_(request.type, request.index, request.n),
                 ErrorCode::kUnknownTarget,
                 std::string(EditTypeName(request.type)) + " target " +
                     std::to_string(request.index) + " does not exist");
  CDEDIT_ENFORCE(LevelAllows(level->second, kind), ErrorCode::kLevelTooLow,
                 std::string(LevelName(level->second)) + " may not hold " +
                     std::string(TokenKindName(kind)));
  const uint64_t cost = config_.Cost(request.type, request.n);
  CDEDIT_ENFORCE(request.deposit >= cost, ErrorCode::kInsufficientDeposit,
                 "deposit " + std::to_string(request.deposit) +
                     " below cost " + std::to_string(cost));

  PrivilegeToken t;
  t.request = request;
  t.time = now;
  t.expire = now + config_.validity;
  t.kind = kind;
  t.uses_remaining = request.n;
  Scalar k = hs_.params().RandomNonZero(rng);
  t.kg = hs_.params().g().Pow(k);
  t.sigma = k + sk_ * TokenChallenge(hs_, pk_, t);

  ledger_.Escrow(request.requester, t.id(), request.deposit);
  tokens_.emplace(t.id(), Issued{t, request.n});
  return t;
}

bool Pts::Verify(const PrivilegeToken& token, Timestamp now) const {
  if (!VerifyToken(hs_, token, pk_, now)) return false;
  std::lock_guard lock(mu_);
  auto it = tokens_.find(token.id());
  return it != tokens_.end() && it->second.uses_remaining > 0;
}

uint32_t Pts::ConsumeUse(const std::string& token_id, Timestamp now) {
  std::lock_guard lock(mu_);
  auto it = tokens_.find(token_id);
  CDEDIT_ENFORCE(it != tokens_.end(), ErrorCode::kUnknownToken,
                 "unknown token " + token_id);
  Issued& issued = it->second;
  CDEDIT_ENFORCE(now < issued.token.expire, ErrorCode::kExpired,
                 "token " + token_id + " expired");
  CDEDIT_ENFORCE(issued.uses_remaining > 0, ErrorCode::kExhausted,
                 "token " + token_id + " has no uses left");
  issued.token.uses_remaining = --issued.uses_remaining;
  return issued.uses_remaining;
}

uint32_t Pts::UsesRemaining(const std::string& token_id) const {
  std::lock_guard lock(mu_);
  auto it = tokens_.find(token_id);
  CDEDIT_ENFORCE(it != tokens_.end(), ErrorCode::kUnknownToken,
                 "unknown token " + token_id);
  return it->second.uses_remaining;
}

PrivilegeToken Pts::Token(const std::string& token_id) const {
  std::lock_guard lock(mu_);
  auto it = tokens_.find(token_id);
  CDEDIT_ENFORCE(it != tokens_.end(), ErrorCode::kUnknownToken,
                 "unknown token " + token_id);
  return it->second.token;
}

DepositLedger::Settlement Pts::Slash(const std::string& token_id,
                                     const std::string& reporter,
                                     uint32_t percent) {
  std::lock_guard lock(mu_);
  return ledger_.Slash(token_id, reporter, percent);
}

uint64_t Pts::Refund(const std::string& token_id) {
  std::lock_guard lock(mu_);
  return ledger_.Release(token_id);
}

DepositLedger Pts::LedgerSnapshot() const {
  std::lock_guard lock(mu_);
  return ledger_;
}

nlohmann::json Pts::ToJson() const {
  std::lock_guard lock(mu_);
  nlohmann::json levels = nlohmann::json::object();
  for (const auto& [id, level] : levels_) levels[id] = LevelName(level);
  nlohmann::json tokens = nlohmann::json::array();
  for (const auto& [_, issued] : tokens_) {
    tokens.push_back(token::ToJson(issued.token));
  }
  return {{"sk", sk_.ToHex()},
          {"pk", pk_.ToHex()},
          {"config",
           {{"base_tx", config_.base_tx},
            {"base_bl", config_.base_bl},
            {"validity", config_.validity}}},
          {"levels", std::move(levels)},
          {"ledger", ledger_.ToJson()},
          {"tokens", std::move(tokens)}};
}

Pts Pts::FromJson(const nlohmann::json& j, const HashSuite& hs) {
  PtsConfig config;
  const auto& c = j.at("config");
  config.base_tx = c.at("base_tx").get<uint64_t>();
  config.base_bl = c.at("base_bl").get<uint64_t>();
  config.validity = c.at("validity").get<Timestamp>();
  Pts pts(hs, hs.params().ScalarFromHex(j.at("sk").get<std::string>()),
          config);
  CDEDIT_ENFORCE(pts.pk_.ToHex() == j.at("pk").get<std::string>(),
                 ErrorCode::kDeserialization, "PTS key pair mismatch");
  for (const auto& [id, level] : j.at("levels").items()) {
    pts.levels_[id] = ParseLevel(level.get<std::string>());
  }
  pts.ledger_ = DepositLedger::FromJson(j.at("ledger"));
  for (const auto& tj : j.at("tokens")) {
    PrivilegeToken t = TokenFromJson(tj, hs.params());
    pts.tokens_.emplace(t.id(), Issued{t, t.uses_remaining});
  }
  return pts;
}

}  // namespace cdedit::token
