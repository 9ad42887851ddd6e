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
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cdedit/bilinear/group.h"
#include "cdedit/token/token.h"

// Wall-clock benchmarks of the algorithms along the device, attribute and
// edit-count axes.
namespace cdedit::bench {

struct BenchOptions {
  Backend backend = Backend::kReal;
  size_t reps = 10;
  size_t warmup = 3;
  uint64_t seed = 1;
  size_t devices = 10;      // devices registered by Setup off the device axis
  size_t attributes = 100;  // attribute count for the edit-cost suite
  size_t e2e_reps = 10;     // end-to-end workflow repetitions per n
};

struct BenchResult {
  std::string algorithm;
  std::string axis;  // devices | attributes | n
  uint64_t value = 0;
  std::vector<double> samples_ms;
  double mean_ms = 0;
  double std_ms = 0;
  std::string backend;
  std::string curve;
  std::string host;
};

// Sample mean and standard deviation of `samples`.
BenchResult Summarize(std::string algorithm, std::string axis, uint64_t value,
                      std::vector<double> samples, const GroupParams& params);

std::string HostFingerprint();

// Least squares line through (value, mean_ms).
struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};
LinearFit FitLine(const std::vector<double>& xs, const std::vector<double>& ys);
LinearFit FitSeries(const std::vector<BenchResult>& series);

// Non-decreasing along the axis up to one standard deviation of noise.
bool Monotone(const std::vector<BenchResult>& series);

// Results grouped by algorithm, each ordered along its axis.
std::map<std::string, std::vector<BenchResult>> BySeries(
    const std::vector<BenchResult>& results);

inline const std::vector<std::string> kAttributeAlgorithms{
    "KeyGen", "Hash", "Adapt", "Verify", "Verify_m", "Audit", "TkGen"};

// Setup along the device axis. Points are sampled in rounds, one sample of
// each point per round.
std::vector<BenchResult> BenchDevices(const std::vector<uint64_t>& points,
                                      const BenchOptions& options);
// kAttributeAlgorithms along the attribute axis, sampled the same way.
std::vector<BenchResult> BenchAttributes(const std::vector<uint64_t>& points,
                                         const BenchOptions& options);

// Per-algorithm means feeding the edit-cost formulas.
struct AlgorithmTimes {
  double set = 0, tk = 0, key = 0, h = 0, ver = 0, ver_m = 0, ad = 0, au = 0;
};

// Predicted totals for n edits of `type`:
//   Tx one-time  t_set + n (t_tk + t_key + t_h + t_ver + t_ver_m + t_ad + t_au)
//   Tx n-times   t + (n-1) (t_h + 2 t_ver + t_ad + t_au)
//   Bl one-time  t_set + n (t_tk + t_key + t_ver_m + t_ad + t_au)
//   Bl n-times   t + (n-1) (t_ver + t_ad + t_au)
// where t is the single-edit total.
double PredictOneTime(const AlgorithmTimes& t, token::EditType type, uint32_t n);
double PredictNTimes(const AlgorithmTimes& t, token::EditType type, uint32_t n);

struct EditCostRow {
  token::EditType type = token::EditType::kTx;
  uint32_t n = 1;
  BenchResult one_time;  // measured end to end
  BenchResult n_times;
  double predicted_one_time_ms = 0;
  double predicted_n_times_ms = 0;
};

struct EditCostTable {
  AlgorithmTimes means;
  std::vector<BenchResult> algorithms;  // the samples behind `means`
  std::vector<EditCostRow> rows;
};

// Runs the n one-time and the n-times workflows end to end, round by round
// over the n values, and measures each algorithm independently in between.
// Every row is predicted from the per-algorithm means.
EditCostTable BenchEditCost(const std::vector<uint32_t>& n_values,
                            token::EditType type, const BenchOptions& options);

// axis,value,algorithm,mean_ms,std_ms,reps,backend
void WriteCsv(std::ostream& out, const std::vector<BenchResult>& results);
std::vector<BenchResult> Flatten(const EditCostTable& table);

// Mean runtime against the axis, one polyline per series.
std::string RenderSvg(const std::vector<BenchResult>& results,
                      const std::string& title);

}  // namespace cdedit::bench
