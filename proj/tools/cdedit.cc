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

// Command-line driver. State lives as JSON under --state-dir.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cdedit/bench/bench.h"
#include "cdedit/system/system.h"

namespace fs = std::filesystem;
using cdedit::system::SystemState;
using cdedit::system::TxSpec;
using nlohmann::json;

namespace {

json ReadJson(const fs::path& path) {
  std::ifstream in(path);
  CDEDIT_ENFORCE(in.good(), cdedit::ErrorCode::kInvalidArgument,
                 "cannot read " + path.string());
  return json::parse(in);
}

void WriteJson(const fs::path& path, const json& j) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(1) << '\n';
    CDEDIT_ENFORCE(out.good(), cdedit::ErrorCode::kInvalidArgument,
                   "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

class Store {
 public:
  explicit Store(fs::path dir) : dir_(std::move(dir)) {}

  fs::path state_path() const { return dir_ / "state.json"; }
  fs::path pending_path() const { return dir_ / "pending.json"; }

  std::unique_ptr<SystemState> Load() const {
    CDEDIT_ENFORCE(fs::exists(state_path()), cdedit::ErrorCode::kInvalidArgument,
                   "no state in " + dir_.string() + "; run 'chain init' first");
    return SystemState::FromJson(ReadJson(state_path()));
  }
  void Save(const SystemState& s) const {
    fs::create_directories(dir_);
    WriteJson(state_path(), s.ToJson());
  }
  json Pending() const {
    return fs::exists(pending_path()) ? ReadJson(pending_path()) : json::array();
  }
  void SetPending(const json& j) const { WriteJson(pending_path(), j); }

 private:
  fs::path dir_;
};

void Print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<TxSpec> Specs(const std::vector<std::string>& mutable_txs,
                          const std::vector<std::string>& immutable_txs) {
  std::vector<TxSpec> out;
  for (const auto& p : mutable_txs) out.push_back({p, true});
  for (const auto& p : immutable_txs) out.push_back({p, false});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Redactable blockchain with policy-based chameleon hashes"};
  app.require_subcommand(1);
  std::string state_dir = ".cdedit";
  app.add_option("--state-dir", state_dir, "Directory holding state.json")
      ->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Run a scenario script");
  std::string script_path, transcript_path;
  bool no_timings = false, save_state = false;
  run->add_option("script", script_path, "Scenario JSON")->required();
  run->add_option("--transcript", transcript_path, "Write the transcript here");
  run->add_flag("--no-timings", no_timings, "Omit step timings");
  run->add_flag("--save-state", save_state, "Persist the final state");

  // chain
  auto* chain = app.add_subcommand("chain", "Chain operations");
  chain->require_subcommand(1);
  auto* init = chain->add_subcommand("init", "Create a new system");
  std::string config_path, backend = "real";
  std::optional<uint64_t> seed;
  size_t devices = 10;
  init->add_option("--config", config_path, "System config JSON");
  init->add_option("--backend", backend, "real | mock")->capture_default_str();
  init->add_option("--seed", seed, "Deterministic seed");
  init->add_option("--devices", devices, "Devices registered as owners")
      ->capture_default_str();

  auto* add_tx = chain->add_subcommand("add-tx", "Queue a transaction");
  std::string payload;
  bool immutable = false;
  add_tx->add_option("payload", payload)->required();
  add_tx->add_flag("--immutable", immutable, "Plain transaction");

  auto* mine = chain->add_subcommand("mine", "Mine queued transactions");
  std::string owner, policy_text;
  bool mutable_block = false;
  mine->add_option("--owner", owner)->required();
  mine->add_option("--policy", policy_text, "Access policy")->required();
  mine->add_flag("--mutable", mutable_block, "Chameleon-hashed block");

  auto* edit_tx = chain->add_subcommand("edit-tx", "Rewrite a transaction");
  std::string modifier, token_id;
  uint64_t tx_id = 0, height = 0;
  edit_tx->add_option("--modifier", modifier)->required();
  edit_tx->add_option("--token", token_id)->required();
  edit_tx->add_option("--tx", tx_id)->required();
  edit_tx->add_option("--payload", payload)->required();

  auto* edit_block = chain->add_subcommand("edit-block", "Rewrite a block");
  std::vector<std::string> new_txs, new_plain_txs;
  edit_block->add_option("--modifier", modifier)->required();
  edit_block->add_option("--token", token_id)->required();
  edit_block->add_option("--height", height)->required();
  edit_block->add_option("--tx", new_txs, "Mutable replacement transaction");
  edit_block->add_option("--plain-tx", new_plain_txs,
                         "Immutable replacement transaction");

  auto* validate = chain->add_subcommand("validate", "Validate the chain");
  auto* show = chain->add_subcommand("show", "Print blocks and the edit log");
  std::optional<uint64_t> show_height;
  show->add_option("--height", show_height, "Single block");

  // modifier
  auto* mod = app.add_subcommand("modifier", "Modifier registry");
  mod->require_subcommand(1);
  auto* mod_add = mod->add_subcommand("add", "Register a modifier");
  std::string level = "m_1T";
  std::vector<std::string> attributes;
  uint64_t balance = 0;
  mod_add->add_option("--id", modifier)->required();
  mod_add->add_option("--level", level)->capture_default_str();
  mod_add->add_option("--attr", attributes)->delimiter(',')->required();
  mod_add->add_option("--balance", balance)->capture_default_str();
  auto* mod_keygen = mod->add_subcommand("keygen", "Issue an attribute key");
  mod_keygen->add_option("--id", modifier)->required();
  mod_keygen->add_option("--attr", attributes, "Defaults to the registered set")
      ->delimiter(',');

  // token
  auto* tok = app.add_subcommand("token", "Privilege tokens");
  tok->require_subcommand(1);
  auto* request = tok->add_subcommand("request", "Request a token");
  std::string type = "tx";
  uint32_t n = 1;
  uint64_t target = 0;
  request->add_option("--modifier", modifier)->required();
  request->add_option("--type", type, "tx | bl")->capture_default_str();
  request->add_option("--n", n)->capture_default_str();
  request->add_option("--target", target, "Transaction id or block height")
      ->required();
  auto* verify = tok->add_subcommand("verify", "Verify an issued token");
  verify->add_option("--token", token_id)->required();

  // audit
  auto* aud = app.add_subcommand("audit", "Audit reported edits");
  aud->require_subcommand(1);
  auto* report = aud->add_subcommand("report", "Report an edit to the authority");
  uint64_t seq = 0;
  std::string reporter = "ca";
  report->add_option("--edit", seq, "Edit log sequence number")->required();
  report->add_option("--reporter", reporter)->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  std::string suite, out_path, svg_path, edit_type = "both";
  cdedit::bench::BenchOptions opts;
  std::vector<uint64_t> points{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<uint32_t> n_values{1, 4, 8, 16, 32};
  std::string bench_backend = "real";
  bench->add_option("--suite", suite, "scaling | editcost")
      ->required()
      ->check(CLI::IsMember({"scaling", "editcost"}));
  bench->add_option("--out", out_path, "CSV output")->required();
  bench->add_option("--svg", svg_path, "Optional SVG plot");
  bench->add_option("--backend", bench_backend)->capture_default_str();
  bench->add_option("--reps", opts.reps)->capture_default_str();
  bench->add_option("--warmup", opts.warmup)->capture_default_str();
  bench->add_option("--points", points, "Axis points")->delimiter(',')->capture_default_str();
  bench->add_option("--n", n_values, "Edit counts")->delimiter(',')->capture_default_str();
  bench->add_option("--attributes", opts.attributes, "Edit-cost attribute count")
      ->capture_default_str();
  bench->add_option("--e2e-reps", opts.e2e_reps, "Edit-cost workflow repetitions")
      ->capture_default_str();
  bench->add_option("--type", edit_type, "tx | bl | both")
      ->check(CLI::IsMember({"tx", "bl", "both"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  const Store store{fs::path(state_dir)};
  try {
    if (*run) {
      auto [state, transcript] = cdedit::system::RunScript(ReadJson(script_path));
      const json t = transcript.ToJson(!no_timings);
      if (transcript_path.empty()) {
        Print(t);
      } else {
        WriteJson(transcript_path, t);
      }
      if (save_state) store.Save(*state);
      return 0;
    }

    if (*init) {
      cdedit::system::SystemConfig config;
      if (!config_path.empty()) {
        config = cdedit::system::SystemConfigFromJson(ReadJson(config_path));
      } else {
        config.backend = cdedit::ParseBackend(backend);
        config.devices = devices;
      }
      if (seed) config.seed = seed;
      auto s = SystemState::Setup(config);
      store.Save(*s);
      store.SetPending(json::array());
      Print({{"state", store.state_path().string()},
             {"curve", s->params().curve()},
             {"devices", s->owners().size()}});
      return 0;
    }

    if (*add_tx) {
      json pending = store.Pending();
      pending.push_back({{"payload", payload}, {"mutable", !immutable}});
      store.SetPending(pending);
      Print({{"pending", pending.size()}});
      return 0;
    }

    if (*bench) {
      opts.backend = cdedit::ParseBackend(bench_backend);
      std::vector<cdedit::bench::BenchResult> results;
      if (suite == "scaling") {
        results = cdedit::bench::BenchDevices(points, opts);
        auto attrs = cdedit::bench::BenchAttributes(points, opts);
        results.insert(results.end(), attrs.begin(), attrs.end());
        for (const auto& [name, series] : cdedit::bench::BySeries(results)) {
          std::cerr << name << ": R^2 = " << cdedit::bench::FitSeries(series).r2
                    << '\n';
        }
      } else {
        for (auto t : {cdedit::token::EditType::kTx, cdedit::token::EditType::kBl}) {
          if (edit_type != "both" && edit_type != cdedit::token::EditTypeName(t)) {
            continue;
          }
          auto table = cdedit::bench::BenchEditCost(n_values, t, opts);
          for (const auto& row : table.rows) {
            std::cerr << cdedit::token::EditTypeName(t) << " n=" << row.n
                      << ": one-time " << row.one_time.mean_ms << " ms (predicted "
                      << row.predicted_one_time_ms << "), n-times "
                      << row.n_times.mean_ms << " ms (predicted "
                      << row.predicted_n_times_ms << ")\n";
          }
          auto flat = cdedit::bench::Flatten(table);
          results.insert(results.end(), flat.begin(), flat.end());
        }
      }
      std::ofstream out(out_path);
      cdedit::bench::WriteCsv(out, results);
      if (!svg_path.empty()) {
        std::ofstream svg(svg_path);
        svg << cdedit::bench::RenderSvg(results, suite + " (" + bench_backend + ")");
      }
      return 0;
    }

    auto s = store.Load();
    json result;
    if (*mine) {
      std::vector<TxSpec> specs;
      for (const auto& p : store.Pending()) {
        specs.push_back({p.at("payload").get<std::string>(),
                         p.at("mutable").get<bool>()});
      }
      CDEDIT_ENFORCE(!specs.empty(), cdedit::ErrorCode::kEmptyList,
                     "no queued transactions; use 'chain add-tx'");
      const auto& b = s->Mine(owner, policy_text, mutable_block, specs);
      json ids = json::array();
      for (const auto& tx : b.txs) ids.push_back(tx.id);
      result = {{"height", b.height}, {"tx_ids", ids},
                {"hash", cdedit::ToHex(b.Hash())}};
      store.SetPending(json::array());
    } else if (*edit_tx) {
      const auto& e = s->EditTx(modifier, token_id, tx_id, payload);
      result = cdedit::chain::ToJson(e);
    } else if (*edit_block) {
      const auto& e =
          s->EditBlock(modifier, token_id, height, Specs(new_txs, new_plain_txs));
      result = cdedit::chain::ToJson(e);
    } else if (*validate) {
      const bool ok = s->chain().Validate(s->hash_suite());
      Print({{"valid", ok}, {"height", s->chain().size() - 1}});
      return ok ? 0 : 1;
    } else if (*show) {
      if (show_height) {
        Print(cdedit::chain::ToJson(s->chain().block(*show_height)));
      } else {
        Print(s->chain().ToJson());
      }
      return 0;
    } else if (*mod_add) {
      const auto& m = s->RegisterModifier(
          modifier, cdedit::token::ParseLevel(level),
          {attributes.begin(), attributes.end()}, balance);
      result = {{"modifier", m.id}, {"level", level}};
    } else if (*mod_keygen) {
      cdedit::policy::AttributeSet theta(attributes.begin(), attributes.end());
      if (theta.empty()) theta = s->modifier(modifier).attributes;
      const auto& key = s->KeygenFor(modifier, theta);
      result = {{"modifier", modifier}, {"components", key.ComponentCount()}};
    } else if (*request) {
      auto t = s->RequestToken(modifier, cdedit::token::ParseEditType(type), n,
                               target);
      result = cdedit::token::ToJson(t);
      result["id"] = t.id();
    } else if (*verify) {
      const auto t = s->pts().Token(token_id);
      const bool ok = cdedit::token::VerifyToken(s->hash_suite(), t,
                                                 s->pts().pk(), s->now());
      Print({{"token", token_id}, {"valid", ok},
             {"uses_remaining", s->pts().UsesRemaining(token_id)}});
      return ok ? 0 : 1;
    } else if (*report) {
      result = cdedit::audit::ToJson(s->Report(seq, reporter));
    }
    store.Save(*s);
    Print(result);
    return 0;
  } catch (const cdedit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
