// Copyright 2026 The irsopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IRSOPT_EXPERIMENT_HPP_
#define IRSOPT_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irsopt/model.hpp"

namespace irsopt {

enum class ExperimentKind {
  kPowerSweep,      // grid: transmit power in dBm
  kIrsCountSweep,   // grid: number of IRSs L
  kIrsSizeSweep,    // grid: elements per IRS M
  kConvergenceTrace,  // grid: user counts K; dumps outer traces
  kBaselineCompare,   // grid: M; also runs the random baseline
};

const char* to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_kind_from(const std::string& name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kPowerSweep;
  std::vector<double> grid;
  int trials = 1;
  SystemConfig base;
  std::string output_dir = "results";
  int baseline_draws = 50;
  // When false (the default) the ms column is written as 0 so that repeated
  // runs produce byte-identical files; --timing turns real measurements on.
  bool record_timing = false;
};

struct ResultRecord {
  std::string experiment;
  double x = 0.0;
  std::uint64_t seed = 0;
  double objective = 0.0;  // NaN marks an isolated trial failure
  std::optional<double> baseline;
  int outer_iters = 0;
  std::int64_t ms = 0;

  bool failed() const { return !(objective == objective); }
};

struct SeriesPoint {
  double x = 0.0;
  int n = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

// Splits an element count into the most square (rows, cols) factorization
// with rows <= cols; used by the IRS-size sweeps.
std::pair<int, int> factor_irs_size(int m);

// The per-trial scenario seed: base seed mixed with the grid-point and trial
// indices.
std::uint64_t trial_seed(const SystemConfig& base, std::size_t point_index,
                         int trial);

// Runs the full sweep (grid x trials, trials in parallel), writes
// <kind>_results.csv, <kind>_summary.csv and the plot data files into
// spec.output_dir, and returns the records in (grid point, trial) order.
// A trial that throws is isolated and recorded as a failed row.
std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec);

// CSV round trip. Header: experiment,x,seed,objective,baseline,outer_iters,ms
void write_results_csv(const std::vector<ResultRecord>& records,
                       std::ostream& os);
std::vector<ResultRecord> parse_results_csv(std::istream& is);

// Per-grid-point mean/std of the proposed (and, when present, baseline)
// objective over non-failed trials.
std::vector<SeriesPoint> summarize(const std::vector<ResultRecord>& records,
                                   bool baseline);

// Writes whitespace-delimited (x mean std) series files plus a gnuplot stub
// referencing them; deterministic and idempotent. Rejects empty input.
void emit_plot_data(const std::vector<ResultRecord>& records,
                    ExperimentKind kind, const std::string& output_dir);

}  // namespace irsopt

#endif  // IRSOPT_EXPERIMENT_HPP_
