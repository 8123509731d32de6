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

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irsopt/config_file.hpp"
#include "irsopt/experiment.hpp"
#include "irsopt/kernels.hpp"
#include "irsopt/model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> trials;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "configuration file")
      ->required();
  cmd->add_option("--seed", args.seed, "override the base seed");
  cmd->add_option("--out", args.out_dir, "override the output directory");
  cmd->add_option("--trials", args.trials, "override the trials per point");
  cmd->add_flag("--timing", args.timing,
                "record wall-clock ms in the results (makes output files "
                "non-reproducible)");
}

// Precedence for the output directory: --out flag, then the IRSOPT_OUT
// environment variable, then the config file.
void apply_overrides(const CommonArgs& args, irsopt::ExperimentSpec& spec) {
  if (args.seed.has_value()) spec.base.seed = *args.seed;
  if (const char* env = std::getenv("IRSOPT_OUT")) spec.output_dir = env;
  if (args.out_dir.has_value()) spec.output_dir = *args.out_dir;
  if (args.trials.has_value()) spec.trials = *args.trials;
  if (args.timing) spec.record_timing = true;
}

int run_spec(irsopt::ExperimentSpec spec) {
  const irsopt::ValidationReport rep = irsopt::validate_config(spec.base);
  if (!rep.ok()) {
    std::fprintf(stderr, "invalid config: %s\n", rep.joined().c_str());
    return kExitConfigError;
  }
  const auto records = irsopt::run_experiment(spec);

  int failures = 0;
  for (const auto& r : records) failures += r.failed() ? 1 : 0;
  const auto proposed = irsopt::summarize(records, false);
  const auto baseline = irsopt::summarize(records, true);
  std::printf("experiment %s (%zu grid points, %d trials, kernels=%s)\n",
              irsopt::to_string(spec.kind), spec.grid.size(), spec.trials,
              irsopt::kernels::active().name);
  for (std::size_t i = 0; i < proposed.size(); ++i) {
    std::printf("  x=%-10g mean=%.6f std=%.6f n=%d", proposed[i].x,
                proposed[i].mean, proposed[i].stddev, proposed[i].n);
    if (baseline[i].n > 0) {
      std::printf("  baseline=%.6f", baseline[i].mean);
    }
    std::printf("\n");
  }
  if (failures > 0) {
    std::printf("  %d trial(s) failed and were recorded as NaN rows\n",
                failures);
  }
  std::printf("results written to %s\n", spec.output_dir.c_str());
  return kExitOk;
}

int run_with_kind(const CommonArgs& args,
                  std::optional<irsopt::ExperimentKind> forced_kind,
                  std::vector<double> default_grid) {
  irsopt::ParsedConfig parsed = irsopt::load_config_file(args.config_path);
  irsopt::ExperimentSpec spec;
  if (parsed.experiment.has_value()) {
    spec = *parsed.experiment;
  } else {
    spec.base = parsed.system;
    spec.grid = default_grid;
  }
  if (forced_kind.has_value()) {
    // The grid's meaning depends on the kind (dBm values, IRS counts, user
    // counts, ...), so a config written for a different experiment keeps
    // only its scenario; the sweep falls back to this subcommand's default.
    if (!parsed.experiment.has_value() ||
        parsed.experiment->kind != *forced_kind) {
      spec.grid = default_grid;
    }
    spec.kind = *forced_kind;
  } else if (!parsed.experiment.has_value()) {
    std::fprintf(stderr,
                 "config has no [experiment] section; nothing to run\n");
    return kExitConfigError;
  }
  apply_overrides(args, spec);
  return run_spec(std::move(spec));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-assisted mmWave downlink sum-rate optimizer"};
  app.require_subcommand(1);

  CommonArgs run_args, conv_args, cmp_args;
  std::string validate_path;

  CLI::App* run = app.add_subcommand(
      "run", "run the experiment described by the config file");
  add_common(run, run_args);

  CLI::App* conv = app.add_subcommand(
      "convergence", "trace outer-loop convergence for each user count");
  add_common(conv, conv_args);

  CLI::App* cmp = app.add_subcommand(
      "compare-baseline",
      "sweep the IRS size and compare against random beamforming");
  add_common(cmp, cmp_args);

  CLI::App* validate = app.add_subcommand(
      "validate-config", "check a configuration file and report violations");
  validate->add_option("-c,--config", validate_path, "configuration file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const irsopt::ParsedConfig parsed =
          irsopt::load_config_file(validate_path);
      const irsopt::ValidationReport rep =
          irsopt::validate_config(parsed.system);
      if (!rep.ok()) {
        for (const std::string& e : rep.errors) {
          std::fprintf(stderr, "invalid: %s\n", e.c_str());
        }
        return kExitConfigError;
      }
      std::printf("config ok\n");
      return kExitOk;
    }
    if (run->parsed()) {
      return run_with_kind(run_args, std::nullopt, {});
    }
    if (conv->parsed()) {
      return run_with_kind(conv_args, irsopt::ExperimentKind::kConvergenceTrace,
                           {2, 4, 6});
    }
    if (cmp->parsed()) {
      return run_with_kind(cmp_args, irsopt::ExperimentKind::kBaselineCompare,
                           {20, 60, 120});
    }
  } catch (const irsopt::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
  return kExitOk;
}
