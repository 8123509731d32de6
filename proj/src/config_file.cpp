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

#include "irsopt/config_file.hpp"

#include <fstream>
#include <sstream>

namespace irsopt {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" +
                      value + "'");
  }
}

double parse_num(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a number, got '" +
                      value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key +
                      "' expects an unsigned integer, got '" + value + "'");
  }
}

std::vector<double> parse_num_list(const std::string& key,
                                   const std::string& value) {
  std::vector<double> out;
  std::istringstream is(value);
  std::string token;
  while (is >> token) out.push_back(parse_num(key, token));
  if (out.empty()) {
    throw ConfigError("config: key '" + key + "' expects a list of numbers");
  }
  return out;
}

}  // namespace

ParsedConfig parse_config(std::istream& is) {
  ParsedConfig out;
  ExperimentSpec exp;
  bool have_experiment = false;
  bool have_timing_key = false;
  bool timing_value = false;

  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "geometry" &&
          section != "solver" && section != "experiment") {
        throw ConfigError("config: unknown section [" + section + "]");
      }
      if (section == "experiment") have_experiment = true;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    if (section.empty()) {
      throw ConfigError("config: key '" + key + "' appears before a section");
    }

    SystemConfig& sys = out.system;
    if (section == "system") {
      if (key == "n_bs_antennas") sys.n_bs_antennas = parse_int(key, value);
      else if (key == "irs_rows") sys.irs_rows = parse_int(key, value);
      else if (key == "irs_cols") sys.irs_cols = parse_int(key, value);
      else if (key == "n_irs") sys.n_irs = parse_int(key, value);
      else if (key == "n_users") sys.n_users = parse_int(key, value);
      else if (key == "total_power_dbm")
        sys.total_power_w = dbm_to_watts(parse_num(key, value));
      else if (key == "noise_power_dbm")
        sys.noise_power_w = dbm_to_watts(parse_num(key, value));
      else if (key == "user_weights")
        sys.user_weights = parse_num_list(key, value);
      else if (key == "path_loss_alpha_db")
        sys.path_loss_alpha_db = parse_num(key, value);
      else if (key == "path_loss_beta")
        sys.path_loss_beta = parse_num(key, value);
      else if (key == "shadowing_var_db2")
        sys.shadowing_var_db2 = parse_num(key, value);
      else
        throw ConfigError("config: unknown key '" + key + "' in [system]");
    } else if (section == "geometry") {
      if (key == "first_irs_distance_m")
        sys.first_irs_distance_m = parse_num(key, value);
      else if (key == "vertical_offset_m")
        sys.vertical_offset_m = parse_num(key, value);
      else if (key == "irs_line_end_m")
        sys.irs_line_end_m = parse_num(key, value);
      else if (key == "first_user_distance_m")
        sys.first_user_distance_m = parse_num(key, value);
      else if (key == "user_spacing_m")
        sys.user_spacing_m = parse_num(key, value);
      else
        throw ConfigError("config: unknown key '" + key + "' in [geometry]");
    } else if (section == "solver") {
      if (key == "tol_theta") sys.tol_theta = parse_num(key, value);
      else if (key == "tol_w") sys.tol_w = parse_num(key, value);
      else if (key == "tol_outer") sys.tol_outer = parse_num(key, value);
      else if (key == "max_inner_iters")
        sys.max_inner_iters = parse_int(key, value);
      else if (key == "max_outer_iters")
        sys.max_outer_iters = parse_int(key, value);
      else if (key == "stage_order") sys.stage_order = value;
      else if (key == "seed") sys.seed = parse_u64(key, value);
      else
        throw ConfigError("config: unknown key '" + key + "' in [solver]");
    } else {  // experiment
      if (key == "kind") {
        const auto kind = experiment_kind_from(value);
        if (!kind.has_value()) {
          throw ConfigError("config: unknown experiment kind '" + value + "'");
        }
        exp.kind = *kind;
      } else if (key == "grid") {
        exp.grid = parse_num_list(key, value);
      } else if (key == "trials") {
        exp.trials = parse_int(key, value);
      } else if (key == "output_dir") {
        exp.output_dir = value;
      } else if (key == "baseline_draws") {
        exp.baseline_draws = parse_int(key, value);
      } else if (key == "timing") {
        have_timing_key = true;
        if (value == "on" || value == "true" || value == "1")
          timing_value = true;
        else if (value == "off" || value == "false" || value == "0")
          timing_value = false;
        else
          throw ConfigError("config: key 'timing' expects on/off");
      } else {
        throw ConfigError("config: unknown key '" + key + "' in [experiment]");
      }
    }
  }

  if (have_experiment) {
    if (exp.grid.empty()) {
      throw ConfigError("config: [experiment] requires a non-empty grid");
    }
    if (exp.trials < 1) {
      throw ConfigError("config: [experiment] trials must be >= 1");
    }
    exp.base = out.system;
    if (have_timing_key) exp.record_timing = timing_value;
    out.experiment = std::move(exp);
  }
  return out;
}

ParsedConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(is);
}

}  // namespace irsopt
