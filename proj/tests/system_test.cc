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

#include <fstream>

#include "doctest.h"

namespace cdedit::system {
namespace {

using token::CredibilityLevel;
using token::EditType;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

SystemConfig Config(Backend backend, size_t devices = 3, uint64_t seed = 5) {
  SystemConfig c;
  c.backend = backend;
  c.devices = devices;
  c.seed = seed;
  return c;
}

nlohmann::json LoadScenario(const std::string& name) {
  std::ifstream in(std::string(CDEDIT_SCENARIO_DIR) + "/" + name);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

TEST_CASE("setup smoke and a full edit on both backends") {
  for (Backend backend : {Backend::kMock, Backend::kReal}) {
    auto s = SystemState::Setup(Config(backend));
    CHECK(s->owners().size() == 3);
    CHECK(s->owners().contains(DeviceId(2)));
    CHECK(s->chain().size() == 1);

    s->RegisterModifier("m", CredibilityLevel::kM1T, {"A"}, 10);
    s->KeygenFor("m", {"A"});
    const auto& b = s->Mine(DeviceId(0), "A", false, {{"hello", true}});
    const uint64_t tx = b.txs[0].id;
    CHECK(pch::Verify(s->hash_suite(), *s->chain().tx(tx).tuple));

    auto t = s->RequestToken("m", EditType::kTx, 1, tx);
    CHECK(token::VerifyToken(s->hash_suite(), t, s->pts().pk(), s->now()));
    const auto& e = s->EditTx("m", t.id(), tx, "bye");
    CHECK(e.old_tuple.ch == e.new_tuple.ch);
    CHECK(e.old_tuple.hprime == e.new_tuple.hprime);
    CHECK(pch::Verify(s->hash_suite(), e.old_tuple));
    CHECK(pch::Verify(s->hash_suite(), e.new_tuple));
    CHECK(s->chain().Validate(s->hash_suite()));
    CHECK(s->Report(0, DeviceId(1)).verdict == audit::Verdict::kClean);
  }
}

TEST_CASE("seeded setup is reproducible") {
  auto a = SystemState::Setup(Config(Backend::kReal, 5, 42));
  auto b = SystemState::Setup(Config(Backend::kReal, 5, 42));
  CHECK(a->ToJson().dump() == b->ToJson().dump());
  auto c = SystemState::Setup(Config(Backend::kReal, 5, 43));
  CHECK(a->ToJson().dump() != c->ToJson().dump());

  auto unseeded = Config(Backend::kMock, 1);
  unseeded.seed.reset();
  CHECK(SystemState::Setup(unseeded)->ToJson().dump() !=
        SystemState::Setup(unseeded)->ToJson().dump());
}

TEST_CASE("persistence round trip continues identically") {
  auto script = LoadScenario("tx_edit.json");
  auto steps = script.at("steps");
  nlohmann::json head(steps.begin(), steps.begin() + 5);
  nlohmann::json tail = nlohmann::json::array();
  // Aliases do not survive a restart; later steps name tokens by id.
  auto [live, t1] = RunScript({{"config", script["config"]}, {"steps", head}});
  const std::string token_id = t1.steps.back().output.at("token");
  for (size_t i = 5; i < steps.size(); ++i) {
    auto step = steps[i];
    if (step.contains("token")) step["token"] = token_id;
    tail.push_back(step);
  }

  auto restored = SystemState::FromJson(live->ToJson());
  CHECK(restored->ToJson() == live->ToJson());
  auto ta = RunScenario(*live, tail);
  auto tb = RunScenario(*restored, tail);
  CHECK(ta.ToJson(false) == tb.ToJson(false));
  CHECK(live->ToJson().dump() == restored->ToJson().dump());

  auto j = live->ToJson();
  j["owners"][0]["credential"] = j["owners"][1]["credential"];
  CHECK(CodeOf([&] { SystemState::FromJson(j); }) ==
        ErrorCode::kDeserialization);
}

TEST_CASE("keygen_for") {
  auto s = SystemState::Setup(Config(Backend::kMock));
  CHECK(CodeOf([&] { s->KeygenFor("ghost", {"A"}); }) ==
        ErrorCode::kUnknownModifier);
  CHECK(CodeOf([&] {
          s->RegisterModifier("m", CredibilityLevel::kM1T, {}, 0);
        }) == ErrorCode::kEmptyAttributeSet);
  s->RegisterModifier("m", CredibilityLevel::kM1T, {"A"}, 0);
  CHECK(CodeOf([&] { s->KeygenFor("m", {}); }) ==
        ErrorCode::kEmptyAttributeSet);
  CHECK(CodeOf([&] { s->EditingKeyFor("m"); }) == ErrorCode::kUnauthorized);

  policy::AttributeSet one{"a0"}, many;
  for (int i = 0; i < 100; ++i) many.insert("a" + std::to_string(i));
  const size_t base = s->KeygenFor("m", one).ComponentCount();
  const auto& key = s->KeygenFor("m", many);
  CHECK(key.ComponentCount() == base + 3 * 99);
  CHECK(key.attributes() == many);
  CHECK(s->modifier("m").attributes == many);
  CHECK(s->EditingKeyFor("m").x == s->chameleon().x);
}

TEST_CASE("owner and modifier roles may intersect") {
  auto s = SystemState::Setup(Config(Backend::kMock, 2));
  const auto& m = s->RegisterModifier(DeviceId(0), CredibilityLevel::kMnB,
                                      {"A"}, 100);
  CHECK(m.identity.components() ==
        s->owner(DeviceId(0)).identity.components());
  s->KeygenFor(DeviceId(0), {"A"});
  const auto& b = s->Mine(DeviceId(0), "A", true, {{"own", true}});
  auto t = s->RequestToken(DeviceId(0), EditType::kBl, 1, b.height);
  s->EditBlock(DeviceId(0), t.id(), b.height, {{"rewritten", true}});
  CHECK(s->chain().Validate(s->hash_suite()));
  CHECK(CodeOf([&] { s->owner("nobody"); }) == ErrorCode::kUnknownOwner);
}

TEST_CASE("scripted tx edit flow") {
  auto script = LoadScenario("tx_edit.json");
  auto [state, transcript] = RunScript(script);
  REQUIRE(transcript.steps.size() == script["steps"].size());
  for (const auto& step : transcript.steps) {
    if (step.op == "validate" || step.op == "verify_token" ||
        step.op == "verify_tx") {
      CHECK(step.output.at("valid") == true);
    }
  }
  CHECK(transcript.steps[9].error == "Exhausted");
  CHECK(transcript.steps.back().output.at("verdict") == "clean");

  auto [again, second] = RunScript(script);
  CHECK(transcript.ToJson(false).dump() == second.ToJson(false).dump());
  CHECK(state->ToJson().dump() == again->ToJson().dump());
}

TEST_CASE("scripted over-count is reported") {
  auto [state, transcript] = RunScript(LoadScenario("over_count.json"));
  const auto& audit = transcript.steps.back().output;
  CHECK(audit.at("verdict") == "violation");
  CHECK(audit.at("violation") == "over-count");
  CHECK(audit.at("level_before") == "m_nT");
  CHECK(audit.at("level_after") == "m_1T");
  CHECK(audit.at("settlement").at("to_reporter") == 1);
  CHECK(audit.at("settlement").at("burned") == 1);
  CHECK(state->pts().Level("mallory") == CredibilityLevel::kM1T);
  CHECK(state->pts().LedgerSnapshot().Conserved());
}

TEST_CASE("step failures carry their index") {
  nlohmann::json steps = nlohmann::json::parse(R"([
    {"op": "register_modifier", "id": "m", "attributes": ["A"]},
    {"op": "advance", "seconds": 5},
    {"op": "keygen", "modifier": "ghost"}
  ])");
  try {
    RunScript(steps);
    FAIL("expected a step failure");
  } catch (const StepFailure& f) {
    CHECK(f.code() == ErrorCode::kScenarioStep);
    CHECK(f.step() == 2);
    CHECK(f.cause() == ErrorCode::kUnknownModifier);
  }
  nlohmann::json wrong = nlohmann::json::parse(R"([
    {"op": "advance", "seconds": 1, "expect_error": "Expired"}
  ])");
  CHECK(CodeOf([&] { RunScript(wrong); }) == ErrorCode::kScenarioStep);
  nlohmann::json unknown = nlohmann::json::parse(R"([{"op": "teleport"}])");
  CHECK(CodeOf([&] { RunScript(unknown); }) == ErrorCode::kScenarioStep);
  nlohmann::json malformed = nlohmann::json::parse(R"([{"op": "keygen"}])");
  CHECK(CodeOf([&] { RunScript(malformed); }) == ErrorCode::kScenarioStep);
}

TEST_CASE("token expiry under the logical clock") {
  nlohmann::json script = nlohmann::json::parse(R"({
    "config": {"backend": "mock", "devices": 1},
    "steps": [
      {"op": "register_modifier", "id": "m", "level": "m_1T",
       "attributes": ["A"], "balance": 5},
      {"op": "keygen", "modifier": "m"},
      {"op": "mine", "owner": "device-0000", "policy": "A", "txs": ["x"]},
      {"op": "request_token", "modifier": "m", "type": "tx",
       "target": [1, 0], "as": "t"},
      {"op": "advance", "seconds": 86400},
      {"op": "verify_token", "token": "t"},
      {"op": "edit_tx", "modifier": "m", "token": "t", "tx": [1, 0],
       "payload": "late", "expect_error": "Expired"}
    ]})");
  auto [state, transcript] = RunScript(script);
  CHECK(transcript.steps[5].output.at("valid") == false);
  CHECK(transcript.steps[6].error == "Expired");
}

}  // namespace
}  // namespace cdedit::system
