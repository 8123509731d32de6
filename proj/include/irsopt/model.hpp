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

#ifndef IRSOPT_MODEL_HPP_
#define IRSOPT_MODEL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "irsopt/linalg.hpp"

namespace irsopt {

// dBm <-> watt. Powers are configured in dBm and stored linear; all of the
// objective math runs on linear quantities.
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Every scenario and solver parameter. Dimensions use the conventional
// symbols: N BS antennas, an M_x x M_y surface per IRS (M = M_x*M_y),
// L surfaces, K users.
struct SystemConfig {
  int n_bs_antennas = 32;
  int irs_rows = 4;   // horizontal elements per IRS (M_x)
  int irs_cols = 5;   // vertical elements per IRS (M_y)
  int n_irs = 2;
  int n_users = 2;

  double total_power_w = 1.0;        // 30 dBm
  double noise_power_w = 3.1622776601683792e-12;  // -85 dBm
  std::vector<double> user_weights;  // empty => all ones

  // Path loss PL(d) = alpha + beta*log10(d) + xi, xi ~ N(0, shadowing_var).
  double path_loss_alpha_db = 61.4;
  double path_loss_beta = 20.0;
  double shadowing_var_db2 = 0.0;

  // Deployment geometry: BS at the origin, users on the y=0 line, IRSs on a
  // parallel line offset vertically.
  double first_irs_distance_m = 11.0;
  double vertical_offset_m = 1.0;
  double irs_line_end_m = 50.0;
  double first_user_distance_m = 5.0;
  double user_spacing_m = 5.0;

  // Solver controls. tol_theta / tol_w stop the inner conjugate-gradient
  // loops; tol_outer stops the alternating loop.
  double tol_theta = 1e-4;
  double tol_w = 1e-4;
  double tol_outer = 1e-3;
  int max_inner_iters = 500;
  int max_outer_iters = 50;

  // Stage order of the alternating loop ("theta,w,power" by default).
  std::string stage_order = "theta,w,power";

  std::uint64_t seed = 1;

  int total_irs_elements() const { return irs_rows * irs_cols; }
  // Weight for user k, defaulting to 1.
  double weight(int k) const {
    return user_weights.empty() ? 1.0 : user_weights[static_cast<size_t>(k)];
  }
};

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
  std::string joined() const;
};

// Checks every config invariant; returns one entry per violation.
ValidationReport validate_config(const SystemConfig& cfg);

// Stacked passive beamformer, a point on the circle manifold: every entry
// has unit modulus (checked to 1e-12).
class PhaseVector {
 public:
  explicit PhaseVector(CVec theta);
  const CVec& vec() const { return theta_; }
  std::size_t size() const { return theta_.size(); }
  const cplx& operator[](std::size_t i) const { return theta_[i]; }

  bool operator==(const PhaseVector&) const = default;

 private:
  CVec theta_;
};

// Active beamformer, K x N with unit-norm rows (row k stores w_k^H).
class BeamMatrix {
 public:
  explicit BeamMatrix(CMat w);
  const CMat& mat() const { return w_; }
  std::size_t users() const { return w_.rows(); }
  std::size_t antennas() const { return w_.cols(); }
  const cplx* row(std::size_t k) const { return w_.row(k); }

  bool operator==(const BeamMatrix&) const = default;

 private:
  CMat w_;
};

// Per-user transmit powers in watts: strictly positive, sum <= budget.
class PowerVector {
 public:
  PowerVector(std::vector<double> p, double budget_w);
  const std::vector<double>& values() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }
  double total() const;

  bool operator==(const PowerVector&) const = default;

 private:
  std::vector<double> p_;
};

}  // namespace irsopt

#endif  // IRSOPT_MODEL_HPP_
