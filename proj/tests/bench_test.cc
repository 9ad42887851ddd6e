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

#include <sstream>

#include "doctest.h"

namespace cdedit::bench {
namespace {

using token::EditType;

BenchOptions Quick() {
  BenchOptions o;
  o.backend = Backend::kMock;
  o.reps = 10;
  o.warmup = 3;
  o.devices = 2;
  o.attributes = 4;
  o.e2e_reps = 10;
  return o;
}

TEST_CASE("summary statistics") {
  auto r = Summarize("x", "n", 3, {1, 2, 3, 4}, GroupParams::Mock());
  CHECK(r.mean_ms == doctest::Approx(2.5));
  // Sample standard deviation: sqrt(((1.5^2 + 0.5^2) * 2) / 3).
  CHECK(r.std_ms == doctest::Approx(1.2909944487));
  CHECK(r.samples_ms.size() == 4);
  CHECK(r.backend == "mock");
  CHECK(!r.host.empty());
}

TEST_CASE("linear fit") {
  auto exact = FitLine({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(exact.slope == doctest::Approx(2));
  CHECK(exact.intercept == doctest::Approx(1));
  CHECK(exact.r2 == doctest::Approx(1));
  // y = x^2 on 0..4: slope 4, intercept -2, R^2 = 1 - 14 / 174.
  auto curved = FitLine({0, 1, 2, 3, 4}, {0, 1, 4, 9, 16});
  CHECK(curved.slope == doctest::Approx(4));
  CHECK(curved.intercept == doctest::Approx(-2));
  CHECK(curved.r2 == doctest::Approx(1 - 14.0 / 174.0));
  CHECK_THROWS_AS(FitLine({1}, {1}), Error);
}

TEST_CASE("monotone within noise") {
  auto point = [](uint64_t v, double mean, double sd) {
    BenchResult r;
    r.value = v;
    r.mean_ms = mean;
    r.std_ms = sd;
    return r;
  };
  CHECK(Monotone({point(1, 1, 0), point(2, 2, 0), point(3, 3, 0)}));
  CHECK(Monotone({point(1, 2, 0.5), point(2, 1.6, 0.1)}));
  CHECK(!Monotone({point(1, 2, 0.1), point(2, 1, 0.1)}));
}

TEST_CASE("edit-cost formulas") {
  AlgorithmTimes t{100, 1, 20, 30, 2, 3, 40, 5};
  // Tx one-time round: 1 + 20 + 30 + 2 + 3 + 40 + 5 = 101.
  CHECK(PredictOneTime(t, EditType::kTx, 1) == doctest::Approx(201));
  CHECK(PredictOneTime(t, EditType::kTx, 4) == doctest::Approx(100 + 4 * 101));
  // Later Tx rounds: 30 + 4 + 40 + 5 = 79.
  CHECK(PredictNTimes(t, EditType::kTx, 4) == doctest::Approx(201 + 3 * 79));
  // Bl one-time round: 1 + 20 + 3 + 40 + 5 = 69; later rounds 2 + 40 + 5.
  CHECK(PredictOneTime(t, EditType::kBl, 8) == doctest::Approx(100 + 8 * 69));
  CHECK(PredictNTimes(t, EditType::kBl, 8) == doctest::Approx(169 + 7 * 47));
  for (auto type : {EditType::kTx, EditType::kBl}) {
    CHECK(PredictOneTime(t, type, 1) == doctest::Approx(PredictNTimes(t, type, 1)));
  }
}

TEST_CASE("csv schema") {
  auto r = Summarize("KeyGen", "attributes", 10, {1.5, 2.5}, GroupParams::Mock());
  std::ostringstream out;
  WriteCsv(out, {r});
  CHECK(out.str() ==
        "axis,value,algorithm,mean_ms,std_ms,reps,backend\n"
        "attributes,10,KeyGen,2.000000,0.707107,2,mock\n");
}

TEST_CASE("mock scaling suite") {
  auto o = Quick();
  auto devices = BenchDevices({2, 4}, o);
  REQUIRE(devices.size() == 2);
  CHECK(devices[0].algorithm == "Setup");
  CHECK(devices[1].value == 4);
  auto attrs = BenchAttributes({2, 4}, o);
  auto series = BySeries(attrs);
  CHECK(series.size() == kAttributeAlgorithms.size());
  for (const auto& name : kAttributeAlgorithms) {
    REQUIRE(series.contains(name));
    CHECK(series[name].size() == 2);
    for (const auto& r : series[name]) CHECK(r.samples_ms.size() >= 10);
  }
  const std::string svg = RenderSvg(attrs, "scaling");
  CHECK(svg.starts_with("<svg"));
  CHECK(svg.find("KeyGen") != std::string::npos);
  CHECK(svg.ends_with("</svg>\n"));
}

TEST_CASE("mock edit-cost suite") {
  auto o = Quick();
  for (auto type : {EditType::kTx, EditType::kBl}) {
    auto table = BenchEditCost({1, 4}, type, o);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.algorithms.size() == 8);
    CHECK(table.rows[1].n == 4);
    CHECK(table.rows[1].one_time.samples_ms.size() == 10);
    CHECK(table.rows[1].predicted_n_times_ms <
          table.rows[1].predicted_one_time_ms);
    auto flat = Flatten(table);
    CHECK(flat.size() == 8 + 2 * 4);
  }
}

}  // namespace
}  // namespace cdedit::bench
