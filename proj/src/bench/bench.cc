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

#include "cdedit/bench/bench.h"

#include <sys/utsname.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "cdedit/audit/audit.h"
#include "cdedit/system/system.h"

namespace cdedit::bench {

using token::EditType;

namespace {

using Clock = std::chrono::steady_clock;

double Ms(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

template <typename F>
std::vector<double> Sample(size_t warmup, size_t reps, F&& fn) {
  for (size_t i = 0; i < warmup; ++i) fn();
  std::vector<double> out;
  out.reserve(reps);
  for (size_t i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    fn();
    out.push_back(Ms(start, Clock::now()));
  }
  return out;
}

// `reps` samples of every job, taken one round at a time across all jobs.
std::vector<std::vector<double>> SampleRounds(
    size_t warmup, size_t reps, const std::vector<std::function<void()>>& jobs) {
  for (const auto& job : jobs) Sample(warmup, 0, job);
  std::vector<std::vector<double>> out(jobs.size());
  for (size_t i = 0; i < reps; ++i) {
    for (size_t j = 0; j < jobs.size(); ++j) {
      auto s = Sample(0, 1, jobs[j]);
      out[j].push_back(s.front());
    }
  }
  return out;
}

std::string AttributeName(size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "attr%03zu", i);
  return buf;
}

system::SystemConfig SetupConfig(const BenchOptions& o, size_t devices) {
  system::SystemConfig c;
  c.backend = o.backend;
  c.seed = o.seed;
  c.devices = devices;
  return c;
}

constexpr char kModifier[] = "bench-modifier";

// A system with one modifier over `attributes` attributes, an owner policy
// that is the conjunction of all of them, and one tuple per algorithm input.
class Fixture {
 public:
  Fixture(std::unique_ptr<system::SystemState> state, size_t attributes,
          uint64_t seed)
      : s_(std::move(state)), rng_(seed) {
    std::string text;
    for (size_t i = 0; i < attributes; ++i) {
      theta_.insert(AttributeName(i));
      text += (i ? " AND " : "") + AttributeName(i);
    }
    policy_ = policy::ParsePolicy(text);
    s_->pts().SetTargetResolver([](EditType, uint64_t, uint32_t) { return true; });
    s_->RegisterModifier(kModifier, token::CredibilityLevel::kMnB, theta_,
                         uint64_t{1} << 40);
    owner_ = &s_->owner(system::DeviceId(0)).identity;
    modifier_ = &s_->modifier(kModifier).identity;
    key_ = KeyGen();
  }

  system::SystemState& state() { return *s_; }
  const pch::EditingKey& key() const { return key_; }

  token::PrivilegeToken TkGen(EditType type, uint32_t n) {
    return s_->pts().TkGen(
        {type, n, kModifier, 1, s_->pts().config().Cost(type, n)}, s_->now(),
        rng_);
  }
  pch::EditingKey KeyGen() {
    return {s_->chameleon().x,
            cpabe::KeyGen(s_->hash_suite(), s_->abe(), theta_, *modifier_, rng_)};
  }
  pch::PchTuple Hash() {
    Bytes m = rng_.Draw(32);
    return pch::Hash(s_->hash_suite(), s_->chameleon().pk, s_->abe().mpk, m,
                     policy_, *owner_, rng_);
  }
  bool Verify(const pch::PchTuple& t) const {
    return pch::Verify(s_->hash_suite(), t);
  }
  bool VerifyM(const token::PrivilegeToken& t) const {
    return token::VerifyToken(s_->hash_suite(), t, s_->pts().pk(), s_->now());
  }
  pch::PchTuple Adapt(const pch::EditingKey& key, const pch::PchTuple& t) {
    return pch::Adapt(s_->hash_suite(), s_->chameleon().pk, s_->abe().mpk, key,
                      t, rng_.Draw(32), *modifier_, rng_);
  }
  audit::AuditRecord Audit(const pch::PchTuple& old_tuple,
                           const pch::PchTuple& new_tuple,
                           const token::PrivilegeToken& t, EditType type) {
    chain::EditLogEntry e;
    e.seq = log_.size();
    e.type = type;
    e.target = 1;
    e.block_height = 1;
    e.editor = kModifier;
    e.editor_level = token::CredibilityLevel::kMnB;
    e.token_id = t.id();
    log_.push_back(std::move(e));
    return audit::AuditEdit(s_->hash_suite(), old_tuple, new_tuple, t, log_);
  }
  void ResetLog() { log_.clear(); }

 private:
  std::unique_ptr<system::SystemState> s_;
  Rng rng_;
  policy::AttributeSet theta_;
  policy::AccessTree policy_ = policy::ParsePolicy("x");
  const cpabe::Identity* owner_ = nullptr;
  const cpabe::Identity* modifier_ = nullptr;
  pch::EditingKey key_;
  std::vector<chain::EditLogEntry> log_;
};

void Require(bool ok, const char* what) {
  CDEDIT_ENFORCE(ok, ErrorCode::kIntegrityFailure,
                 std::string("benchmark workload failed: ") + what);
}

}  // namespace

BenchResult Summarize(std::string algorithm, std::string axis, uint64_t value,
                      std::vector<double> samples, const GroupParams& params) {
  BenchResult r;
  r.algorithm = std::move(algorithm);
  r.axis = std::move(axis);
  r.value = value;
  const double n = static_cast<double>(samples.size());
  r.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0;
  for (double x : samples) ss += (x - r.mean_ms) * (x - r.mean_ms);
  r.std_ms = samples.size() > 1 ? std::sqrt(ss / (n - 1)) : 0;
  r.samples_ms = std::move(samples);
  r.backend = std::string(BackendName(params.backend()));
  r.curve = params.curve();
  r.host = HostFingerprint();
  return r;
}

std::string HostFingerprint() {
  utsname u{};
  uname(&u);
  std::ostringstream out;
  out << u.sysname << " " << u.release << " " << u.machine << " "
      << std::thread::hardware_concurrency() << "cpu";
  return out.str();
}

LinearFit FitLine(const std::vector<double>& xs, const std::vector<double>& ys) {
  CDEDIT_ENFORCE(xs.size() == ys.size() && xs.size() >= 2,
                 ErrorCode::kInvalidArgument, "a fit needs two points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LinearFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.slope * xs[i]);
    ss_res += e * e;
  }
  f.r2 = syy > 0 ? 1 - ss_res / syy : 1;
  return f;
}

LinearFit FitSeries(const std::vector<BenchResult>& series) {
  std::vector<double> xs, ys;
  for (const auto& r : series) {
    xs.push_back(static_cast<double>(r.value));
    ys.push_back(r.mean_ms);
  }
  return FitLine(xs, ys);
}

bool Monotone(const std::vector<BenchResult>& series) {
  for (size_t i = 1; i < series.size(); ++i) {
    const double slack = std::max(series[i].std_ms, series[i - 1].std_ms);
    if (series[i].mean_ms + slack < series[i - 1].mean_ms) return false;
  }
  return true;
}

std::map<std::string, std::vector<BenchResult>> BySeries(
    const std::vector<BenchResult>& results) {
  std::map<std::string, std::vector<BenchResult>> out;
  for (const auto& r : results) out[r.algorithm].push_back(r);
  for (auto& [name, series] : out) {
    std::sort(series.begin(), series.end(),
              [](const auto& a, const auto& b) { return a.value < b.value; });
  }
  return out;
}

std::vector<BenchResult> BenchDevices(const std::vector<uint64_t>& points,
                                      const BenchOptions& options) {
  CDEDIT_ENFORCE(!points.empty(), ErrorCode::kInvalidArgument,
                 "no benchmark points");
  const GroupParams params = GroupParams::Setup(options.backend);
  std::vector<std::function<void()>> jobs;
  for (uint64_t devices : points) {
    jobs.push_back([&options, devices] {
      auto s = system::SystemState::Setup(SetupConfig(options, devices));
      Require(s->owners().size() == devices, "device registration");
    });
  }
  auto samples = SampleRounds(options.warmup, options.reps, jobs);
  std::vector<BenchResult> out;
  for (size_t i = 0; i < points.size(); ++i) {
    out.push_back(Summarize("Setup", "devices", points[i], std::move(samples[i]),
                            params));
  }
  return out;
}

std::vector<BenchResult> BenchAttributes(const std::vector<uint64_t>& points,
                                         const BenchOptions& options) {
  CDEDIT_ENFORCE(!points.empty(), ErrorCode::kInvalidArgument,
                 "no benchmark points");
  struct Point {
    Fixture f;
    pch::PchTuple tuple;
    pch::PchTuple adapted;
    token::PrivilegeToken tk;
  };
  std::vector<std::unique_ptr<Point>> fixtures;
  std::vector<std::function<void()>> jobs;
  std::vector<std::pair<std::string, uint64_t>> labels;
  for (uint64_t a : points) {
    Fixture f(system::SystemState::Setup(SetupConfig(options, options.devices)),
              a, options.seed + a);
    auto tuple = f.Hash();
    auto adapted = f.Adapt(f.key(), tuple);
    auto tk = f.TkGen(EditType::kTx, 1);
    fixtures.push_back(std::make_unique<Point>(
        Point{std::move(f), std::move(tuple), std::move(adapted), std::move(tk)}));
    Point& p = *fixtures.back();
    const std::vector<std::pair<std::string, std::function<void()>>> algorithms{
        {"KeyGen", [&p] { p.f.KeyGen(); }},
        {"Hash", [&p] { p.f.Hash(); }},
        {"Adapt", [&p] { p.f.Adapt(p.f.key(), p.tuple); }},
        {"Verify", [&p] { Require(p.f.Verify(p.adapted), "Verify"); }},
        {"Verify_m", [&p] { Require(p.f.VerifyM(p.tk), "Verify_m"); }},
        {"Audit",
         [&p] {
           p.f.ResetLog();
           Require(p.f.Audit(p.tuple, p.adapted, p.tk, EditType::kTx).verdict ==
                       audit::Verdict::kClean,
                   "Audit");
         }},
        {"TkGen", [&p] { p.f.TkGen(EditType::kTx, 1); }},
    };
    for (const auto& [name, job] : algorithms) {
      labels.emplace_back(name, a);
      jobs.push_back(job);
    }
  }
  auto samples = SampleRounds(options.warmup, options.reps, jobs);
  const GroupParams params = GroupParams::Setup(options.backend);
  std::vector<BenchResult> out;
  for (size_t i = 0; i < jobs.size(); ++i) {
    out.push_back(Summarize(labels[i].first, "attributes", labels[i].second,
                            std::move(samples[i]), params));
  }
  return out;
}

double PredictOneTime(const AlgorithmTimes& t, EditType type, uint32_t n) {
  const double round = type == EditType::kTx
                           ? t.tk + t.key + t.h + t.ver + t.ver_m + t.ad + t.au
                           : t.tk + t.key + t.ver_m + t.ad + t.au;
  return t.set + n * round;
}

double PredictNTimes(const AlgorithmTimes& t, EditType type, uint32_t n) {
  const double later = type == EditType::kTx ? t.h + 2 * t.ver + t.ad + t.au
                                             : t.ver + t.ad + t.au;
  return PredictOneTime(t, type, 1) + (n - 1) * later;
}

EditCostTable BenchEditCost(const std::vector<uint32_t>& n_values,
                            EditType type, const BenchOptions& options) {
  CDEDIT_ENFORCE(!n_values.empty(), ErrorCode::kInvalidArgument,
                 "no benchmark points");
  const std::string prefix(token::EditTypeName(type));
  EditCostTable table;
  auto setup = [&] {
    return system::SystemState::Setup(SetupConfig(options, options.devices));
  };

  Fixture f(setup(), options.attributes, options.seed);
  const GroupParams params = f.state().params();
  const pch::PchTuple tuple = f.Hash();
  const pch::PchTuple adapted = f.Adapt(f.key(), tuple);
  const auto tk = f.TkGen(type, 1);

  // One sample of every algorithm, in AlgorithmTimes order.
  constexpr size_t kAlgorithms = 8;
  static constexpr const char* kNames[kAlgorithms] = {
      "Setup", "TkGen", "KeyGen", "Hash", "Verify", "Verify_m", "Adapt", "Audit"};
  std::array<std::function<void()>, kAlgorithms> ops{
      [&] { setup(); },
      [&] { f.TkGen(type, 1); },
      [&] { f.KeyGen(); },
      [&] { f.Hash(); },
      [&] { f.Verify(adapted); },
      [&] { f.VerifyM(tk); },
      [&] { f.Adapt(f.key(), tuple); },
      [&] {
        f.ResetLog();
        f.Audit(tuple, adapted, tk, type);
      }};
  using Samples = std::array<std::vector<double>, kAlgorithms>;
  auto sample_all = [&](Samples& into, size_t count) {
    for (size_t k = 0; k < kAlgorithms; ++k) {
      auto s = Sample(0, count, ops[k]);
      into[k].insert(into[k].end(), s.begin(), s.end());
    }
  };
  auto means_of = [](const Samples& s) {
    auto mean = [](const std::vector<double>& v) {
      return std::accumulate(v.begin(), v.end(), 0.0) /
             static_cast<double>(v.size());
    };
    return AlgorithmTimes{mean(s[0]), mean(s[1]), mean(s[2]), mean(s[3]),
                          mean(s[4]), mean(s[5]), mean(s[6]), mean(s[7])};
  };
  for (size_t k = 0; k < kAlgorithms; ++k) Sample(options.warmup, 0, ops[k]);

  // End-to-end workflows. Setup is timed; fixture preparation is not.
  auto run = [&](uint32_t n, bool n_times) {
    const auto t0 = Clock::now();
    auto state = setup();
    const double t_set = Ms(t0, Clock::now());
    Fixture g(std::move(state), options.attributes, options.seed + n);
    pch::PchTuple block = g.Hash();

    const auto t1 = Clock::now();
    token::PrivilegeToken token;
    pch::EditingKey key;
    for (uint32_t i = 0; i < n; ++i) {
      const bool first = i == 0 || !n_times;
      if (first) {
        token = g.TkGen(type, n_times ? n : 1);
        key = g.KeyGen();
        g.ResetLog();
      }
      if (type == EditType::kTx) {
        pch::PchTuple t = g.Hash();
        Require(g.Verify(t), "Verify");
        if (first) Require(g.VerifyM(token), "Verify_m");
        pch::PchTuple t2 = g.Adapt(key, t);
        if (!first) Require(g.Verify(t2), "Verify");
        Require(g.Audit(t, t2, token, type).verdict == audit::Verdict::kClean,
                "Audit");
      } else {
        if (first) {
          Require(g.VerifyM(token), "Verify_m");
        } else {
          Require(g.Verify(block), "Verify");
        }
        pch::PchTuple t2 = g.Adapt(key, block);
        Require(g.Audit(block, t2, token, type).verdict ==
                    audit::Verdict::kClean,
                "Audit");
        block = std::move(t2);
      }
    }
    return t_set + Ms(t1, Clock::now());
  };
  run(1, false);

  // Workflow runs and algorithm samples alternate, round by round over n.
  Samples all;
  const size_t per_round = std::max<size_t>(
      1, (options.reps + options.e2e_reps - 1) / options.e2e_reps);
  std::vector<std::vector<double>> one(n_values.size()), many(n_values.size());
  for (size_t i = 0; i < options.e2e_reps; ++i) {
    for (size_t j = 0; j < n_values.size(); ++j) {
      one[j].push_back(run(n_values[j], false));
      many[j].push_back(run(n_values[j], true));
      sample_all(all, per_round);
    }
  }
  table.means = means_of(all);
  for (size_t j = 0; j < n_values.size(); ++j) {
    const uint32_t n = n_values[j];
    EditCostRow row;
    row.type = type;
    row.n = n;
    row.one_time =
        Summarize(prefix + "/one-time", "n", n, std::move(one[j]), params);
    row.n_times =
        Summarize(prefix + "/n-times", "n", n, std::move(many[j]), params);
    row.predicted_one_time_ms = PredictOneTime(table.means, type, n);
    row.predicted_n_times_ms = PredictNTimes(table.means, type, n);
    table.rows.push_back(std::move(row));
  }
  for (size_t k = 0; k < kAlgorithms; ++k) {
    table.algorithms.push_back(Summarize(kNames[k], "attributes",
                                         options.attributes, std::move(all[k]),
                                         params));
  }
  return table;
}

std::vector<BenchResult> Flatten(const EditCostTable& table) {
  std::vector<BenchResult> out = table.algorithms;
  for (const auto& row : table.rows) {
    out.push_back(row.one_time);
    out.push_back(row.n_times);
    BenchResult p1 = row.one_time, p2 = row.n_times;
    p1.algorithm += "/predicted";
    p2.algorithm += "/predicted";
    p1.mean_ms = row.predicted_one_time_ms;
    p2.mean_ms = row.predicted_n_times_ms;
    p1.std_ms = p2.std_ms = 0;
    out.push_back(std::move(p1));
    out.push_back(std::move(p2));
  }
  return out;
}

void WriteCsv(std::ostream& out, const std::vector<BenchResult>& results) {
  out << "axis,value,algorithm,mean_ms,std_ms,reps,backend\n";
  for (const auto& r : results) {
    char mean[32], sd[32];
    std::snprintf(mean, sizeof(mean), "%.6f", r.mean_ms);
    std::snprintf(sd, sizeof(sd), "%.6f", r.std_ms);
    out << r.axis << ',' << r.value << ',' << r.algorithm << ',' << mean << ','
        << sd << ',' << r.samples_ms.size() << ',' << r.backend << '\n';
  }
}

std::string RenderSvg(const std::vector<BenchResult>& results,
                      const std::string& title) {
  constexpr double kW = 640, kH = 400, kPad = 50;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  double max_x = 1, max_y = 1e-9;
  for (const auto& r : results) {
    max_x = std::max(max_x, static_cast<double>(r.value));
    max_y = std::max(max_y, r.mean_ms);
  }
  auto px = [&](double x) { return kPad + x / max_x * (kW - 2 * kPad); };
  auto py = [&](double y) { return kH - kPad - y / max_y * (kH - 2 * kPad); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
    << "\" height=\"" << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<text x=\"" << kPad << "\" y=\"20\">" << title << "</text>\n"
    << "<line x1=\"" << kPad << "\" y1=\"" << py(0) << "\" x2=\"" << px(max_x)
    << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << kPad << "\" y1=\"" << py(0) << "\" x2=\"" << kPad
    << "\" y2=\"" << py(max_y) << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << kPad << "\" y=\"" << py(max_y) - 5 << "\">" << max_y
    << " ms</text>\n"
    << "<text x=\"" << px(max_x) - 20 << "\" y=\"" << py(0) + 15 << "\">"
    << max_x << "</text>\n";
  size_t color = 0;
  for (const auto& [name, series] : BySeries(results)) {
    const char* c = kColors[color % std::size(kColors)];
    s << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"";
    for (const auto& r : series) {
      s << px(static_cast<double>(r.value)) << ',' << py(r.mean_ms) << ' ';
    }
    s << "\"/>\n<text x=\"" << kW - kPad - 100 << "\" y=\""
      << 40 + 14 * static_cast<double>(color) << "\" fill=\"" << c << "\">"
      << name << "</text>\n";
    ++color;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace cdedit::bench
