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

#include "irsopt/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace irsopt {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  return 10.0 * std::log10(watts) + 30.0;
}

std::string ValidationReport::joined() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i > 0) os << "; ";
    os << errors[i];
  }
  return os.str();
}

ValidationReport validate_config(const SystemConfig& cfg) {
  ValidationReport rep;
  auto bad = [&rep](const std::string& msg) { rep.errors.push_back(msg); };

  if (cfg.n_bs_antennas < 1) bad("n_bs_antennas must be >= 1");
  if (cfg.irs_rows < 1) bad("irs_rows must be >= 1");
  if (cfg.irs_cols < 1) bad("irs_cols must be >= 1");
  if (cfg.n_irs < 1) bad("n_irs must be >= 1");
  if (cfg.n_users < 1) bad("n_users must be >= 1");

  if (!(cfg.total_power_w > 0.0)) bad("total_power must be > 0");
  if (!std::isfinite(cfg.total_power_w)) {
    bad("total_power overflows the linear (watt) representation");
  }
  if (!(cfg.noise_power_w > 0.0)) bad("noise_power must be > 0");
  if (!std::isfinite(cfg.noise_power_w)) {
    bad("noise_power overflows the linear (watt) representation");
  }

  if (!cfg.user_weights.empty()) {
    if (static_cast<int>(cfg.user_weights.size()) != cfg.n_users) {
      bad("user_weights must have one entry per user");
    }
    bool any_positive = false;
    for (double w : cfg.user_weights) {
      if (w < 0.0) bad("user weights must be nonnegative");
      if (w > 0.0) any_positive = true;
    }
    if (!any_positive) bad("at least one positive weight is required");
  }

  if (!(cfg.shadowing_var_db2 >= 0.0)) bad("shadowing_var_db2 must be >= 0");

  if (!(cfg.tol_theta > 0.0)) bad("tol_theta must be > 0");
  if (!(cfg.tol_w > 0.0)) bad("tol_w must be > 0");
  if (!(cfg.tol_outer > 0.0)) bad("tol_outer must be > 0");
  if (cfg.max_inner_iters < 1) bad("max_inner_iters must be >= 1");
  if (cfg.max_outer_iters < 1) bad("max_outer_iters must be >= 1");

  if (!(cfg.first_irs_distance_m > 0.0)) bad("first_irs_distance_m must be > 0");
  if (!(cfg.first_user_distance_m > 0.0)) {
    bad("first_user_distance_m must be > 0");
  }
  if (cfg.user_spacing_m < 0.0) bad("user_spacing_m must be >= 0");
  if (cfg.irs_line_end_m < cfg.first_irs_distance_m) {
    bad("irs_line_end_m must be >= first_irs_distance_m");
  }

  if (cfg.stage_order != "theta,w,power" && cfg.stage_order != "power,theta,w") {
    bad("stage_order must be 'theta,w,power' or 'power,theta,w'");
  }

  return rep;
}

PhaseVector::PhaseVector(CVec theta) : theta_(std::move(theta)) {
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (std::abs(std::abs(theta_[i]) - 1.0) > 1e-12) {
      throw std::invalid_argument(
          "PhaseVector: entry " + std::to_string(i) + " is not unit modulus");
    }
  }
}

BeamMatrix::BeamMatrix(CMat w) : w_(std::move(w)) {
  for (std::size_t k = 0; k < w_.rows(); ++k) {
    const double nrm =
        std::sqrt(kernels::active().norm2sq(w_.row(k), w_.cols()));
    if (std::abs(nrm - 1.0) > 1e-12) {
      throw std::invalid_argument(
          "BeamMatrix: row " + std::to_string(k) + " does not have unit norm");
    }
  }
}

PowerVector::PowerVector(std::vector<double> p, double budget_w)
    : p_(std::move(p)) {
  double sum = 0.0;
  for (std::size_t k = 0; k < p_.size(); ++k) {
    if (!(p_[k] > 0.0)) {
      throw std::invalid_argument(
          "PowerVector: power " + std::to_string(k) + " must be > 0");
    }
    sum += p_[k];
  }
  if (sum > budget_w * (1.0 + 1e-12)) {
    throw std::invalid_argument("PowerVector: total power exceeds the budget");
  }
}

double PowerVector::total() const {
  double sum = 0.0;
  for (double x : p_) sum += x;
  return sum;
}

}  // namespace irsopt
