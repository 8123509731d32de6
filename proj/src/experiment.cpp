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

#include "irsopt/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "irsopt/driver.hpp"

namespace irsopt {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("results csv: bad number '" + s + "'");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

// Applies one sweep value to a copy of the base config.
SystemConfig config_at(const ExperimentSpec& spec, double x) {
  SystemConfig cfg = spec.base;
  switch (spec.kind) {
    case ExperimentKind::kPowerSweep:
      cfg.total_power_w = dbm_to_watts(x);
      break;
    case ExperimentKind::kIrsCountSweep:
      cfg.n_irs = static_cast<int>(x);
      break;
    case ExperimentKind::kIrsSizeSweep:
    case ExperimentKind::kBaselineCompare: {
      const auto [rows, cols] = factor_irs_size(static_cast<int>(x));
      cfg.irs_rows = rows;
      cfg.irs_cols = cols;
      break;
    }
    case ExperimentKind::kConvergenceTrace:
      cfg.n_users = static_cast<int>(x);
      if (!cfg.user_weights.empty()) cfg.user_weights.clear();
      break;
  }
  return cfg;
}

struct TrialOutput {
  ResultRecord record;
  std::vector<OuterRecord> trace;  // kept only for convergence dumps
};

TrialOutput run_trial(const ExperimentSpec& spec, std::size_t point_index,
                      int trial) {
  const double x = spec.grid[point_index];
  TrialOutput out;
  out.record.experiment = to_string(spec.kind);
  out.record.x = x;
  out.record.seed = trial_seed(spec.base, point_index, trial);

  const auto start = std::chrono::steady_clock::now();
  try {
    const SystemConfig cfg = config_at(spec, x);
    Rng rng(out.record.seed);
    const ChannelSet ch = sample_scenario(cfg, rng);
    const InitPoint init = init_point(cfg, ch, rng);
    const Solution sol = solve(cfg, ch, init);
    out.record.objective = sol.objective;
    out.record.outer_iters = std::max(1, sol.outer_iterations());
    out.trace = sol.outer_trace;
    if (spec.kind == ExperimentKind::kBaselineCompare) {
      Solution base = random_baseline(cfg, ch, spec.baseline_draws, rng);
      out.record.baseline = base.objective;
    }
  } catch (const std::exception&) {
    out.record.objective = std::numeric_limits<double>::quiet_NaN();
    out.record.outer_iters = 0;
  }
  if (spec.record_timing) {
    out.record.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  }
  return out;
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double v : xs) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / (static_cast<double>(xs.size()) - 1.0));
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kPowerSweep: return "power_sweep";
    case ExperimentKind::kIrsCountSweep: return "irs_count_sweep";
    case ExperimentKind::kIrsSizeSweep: return "irs_size_sweep";
    case ExperimentKind::kConvergenceTrace: return "convergence";
    case ExperimentKind::kBaselineCompare: return "baseline_compare";
  }
  return "unknown";
}

std::optional<ExperimentKind> experiment_kind_from(const std::string& name) {
  if (name == "power_sweep") return ExperimentKind::kPowerSweep;
  if (name == "irs_count_sweep") return ExperimentKind::kIrsCountSweep;
  if (name == "irs_size_sweep") return ExperimentKind::kIrsSizeSweep;
  if (name == "convergence") return ExperimentKind::kConvergenceTrace;
  if (name == "baseline_compare") return ExperimentKind::kBaselineCompare;
  return std::nullopt;
}

std::pair<int, int> factor_irs_size(int m) {
  if (m < 1) throw std::invalid_argument("factor_irs_size: m must be >= 1");
  for (int a = static_cast<int>(std::sqrt(static_cast<double>(m))); a >= 1;
       --a) {
    if (m % a == 0) return {a, m / a};
  }
  return {1, m};
}

std::uint64_t trial_seed(const SystemConfig& base, std::size_t point_index,
                         int trial) {
  return mix_seed(base.seed, static_cast<std::uint64_t>(point_index) + 1,
                  static_cast<std::uint64_t>(trial) + 1);
}

void write_results_csv(const std::vector<ResultRecord>& records,
                       std::ostream& os) {
  os << "experiment,x,seed,objective,baseline,outer_iters,ms\n";
  for (const ResultRecord& r : records) {
    os << r.experiment << ',' << format_double(r.x) << ',' << r.seed << ','
       << format_double(r.objective) << ',';
    if (r.baseline.has_value()) os << format_double(*r.baseline);
    os << ',' << r.outer_iters << ',' << r.ms << '\n';
  }
}

std::vector<ResultRecord> parse_results_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) ||
      line != "experiment,x,seed,objective,baseline,outer_iters,ms") {
    throw std::runtime_error("results csv: missing or unexpected header");
  }
  std::vector<ResultRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 7) {
      throw std::runtime_error("results csv: expected 7 fields per row");
    }
    ResultRecord r;
    r.experiment = f[0];
    r.x = parse_double(f[1]);
    r.seed = std::stoull(f[2]);
    r.objective = parse_double(f[3]);
    if (!f[4].empty()) r.baseline = parse_double(f[4]);
    r.outer_iters = std::stoi(f[5]);
    r.ms = std::stoll(f[6]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SeriesPoint> summarize(const std::vector<ResultRecord>& records,
                                   bool baseline) {
  std::vector<SeriesPoint> out;
  std::vector<double> xs_seen;
  for (const ResultRecord& r : records) {
    bool seen = false;
    for (double x : xs_seen) seen = seen || x == r.x;
    if (!seen) xs_seen.push_back(r.x);
  }
  for (double x : xs_seen) {
    std::vector<double> values;
    for (const ResultRecord& r : records) {
      if (r.x != x || r.failed()) continue;
      if (baseline) {
        if (r.baseline.has_value()) values.push_back(*r.baseline);
      } else {
        values.push_back(r.objective);
      }
    }
    SeriesPoint pt;
    pt.x = x;
    pt.n = static_cast<int>(values.size());
    if (!values.empty()) {
      double sum = 0.0;
      for (double v : values) sum += v;
      pt.mean = sum / static_cast<double>(values.size());
      pt.stddev = sample_std(values, pt.mean);
    }
    out.push_back(pt);
  }
  return out;
}

void emit_plot_data(const std::vector<ResultRecord>& records,
                    ExperimentKind kind, const std::string& output_dir) {
  if (records.empty()) {
    throw std::invalid_argument("emit_plot_data: no records");
  }
  namespace fs = std::filesystem;
  fs::create_directories(output_dir);
  const std::string name = to_string(kind);

  auto write_series = [&](const std::vector<SeriesPoint>& series,
                          const std::string& file) {
    std::ofstream os(file, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + file);
    os << "# x mean std\n";
    for (const SeriesPoint& pt : series) {
      os << format_double(pt.x) << ' ' << format_double(pt.mean) << ' '
         << format_double(pt.stddev) << '\n';
    }
  };

  const std::string proposed = output_dir + "/" + name + "_proposed.dat";
  write_series(summarize(records, false), proposed);

  bool have_baseline = false;
  for (const ResultRecord& r : records) {
    have_baseline = have_baseline || r.baseline.has_value();
  }
  if (have_baseline) {
    write_series(summarize(records, true),
                 output_dir + "/" + name + "_baseline.dat");
  }

  std::ofstream gp(output_dir + "/plot_" + name + ".gp", std::ios::trunc);
  if (!gp) throw std::runtime_error("cannot write plot stub");
  gp << "# gnuplot stub for the " << name << " experiment\n";
  gp << "set xlabel 'sweep value'\n";
  gp << "set ylabel 'sum rate (bits/s/Hz)'\n";
  gp << "plot '" << name << "_proposed.dat' using 1:2:3 with yerrorlines "
     << "title 'proposed'";
  if (have_baseline) {
    gp << ", \\\n     '" << name << "_baseline.dat' using 1:2:3 with "
       << "yerrorlines title 'random baseline'";
  }
  gp << "\n";
}

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec) {
  if (spec.grid.empty()) {
    throw std::invalid_argument("run_experiment: empty sweep grid");
  }
  if (spec.trials < 1) {
    throw std::invalid_argument("run_experiment: trials must be >= 1");
  }
  if (spec.kind != ExperimentKind::kPowerSweep) {
    // Every other sweep counts things (surfaces, elements, users).
    for (double x : spec.grid) {
      if (!(x >= 1.0) || x != std::floor(x)) {
        throw std::invalid_argument(
            "run_experiment: sweep values for this experiment must be "
            "positive integers");
      }
    }
  }
  const ValidationReport rep = validate_config(spec.base);
  if (!rep.ok()) {
    throw std::invalid_argument("run_experiment: invalid base config: " +
                                rep.joined());
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(spec.output_dir, ec);

  const std::size_t total = spec.grid.size() * static_cast<std::size_t>(spec.trials);
  std::vector<TrialOutput> outputs(total);

  // Trials run in parallel; slots are preassigned so file order is always
  // (grid point, trial) regardless of scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      const std::size_t point = idx / static_cast<std::size_t>(spec.trials);
      const int trial = static_cast<int>(idx % static_cast<std::size_t>(spec.trials));
      outputs[idx] = run_trial(spec, point, trial);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_workers =
      std::min<std::size_t>(hw, std::max<std::size_t>(1, total));
  std::vector<std::future<void>> workers;
  for (std::size_t i = 1; i < n_workers; ++i) {
    workers.push_back(std::async(std::launch::async, worker));
  }
  worker();
  for (auto& w : workers) w.get();

  std::vector<ResultRecord> records;
  records.reserve(total);
  for (const TrialOutput& out : outputs) records.push_back(out.record);

  const std::string name = to_string(spec.kind);
  {
    std::ofstream os(spec.output_dir + "/" + name + "_results.csv",
                     std::ios::trunc);
    if (!os) {
      throw std::runtime_error("run_experiment: cannot write results to " +
                               spec.output_dir);
    }
    write_results_csv(records, os);
  }
  {
    std::ofstream os(spec.output_dir + "/" + name + "_summary.csv",
                     std::ios::trunc);
    if (!os) throw std::runtime_error("run_experiment: cannot write summary");
    os << "experiment,x,n,mean,std,baseline_mean,baseline_std\n";
    const auto proposed = summarize(records, false);
    const auto baseline = summarize(records, true);
    for (std::size_t i = 0; i < proposed.size(); ++i) {
      os << name << ',' << format_double(proposed[i].x) << ',' << proposed[i].n
         << ',' << format_double(proposed[i].mean) << ','
         << format_double(proposed[i].stddev) << ',';
      if (baseline[i].n > 0) {
        os << format_double(baseline[i].mean) << ','
           << format_double(baseline[i].stddev);
      } else {
        os << ',';
      }
      os << '\n';
    }
  }
  emit_plot_data(records, spec.kind, spec.output_dir);

  if (spec.kind == ExperimentKind::kConvergenceTrace) {
    // Outer-iteration trace of trial 0 at every grid point.
    for (std::size_t point = 0; point < spec.grid.size(); ++point) {
      const TrialOutput& out = outputs[point * static_cast<std::size_t>(spec.trials)];
      std::ostringstream file;
      file << spec.output_dir << "/" << name << "_trace_K"
           << static_cast<int>(spec.grid[point]) << ".dat";
      std::ofstream os(file.str(), std::ios::trunc);
      if (!os) throw std::runtime_error("run_experiment: cannot write trace");
      os << "# outer_iter objective delta_theta delta_w delta_power\n";
      for (const OuterRecord& r : out.trace) {
        os << r.iter << ' ' << format_double(r.objective) << ' '
           << format_double(r.delta_theta) << ' ' << format_double(r.delta_w)
           << ' ' << format_double(r.delta_power) << '\n';
      }
    }
  }
  return records;
}

}  // namespace irsopt
