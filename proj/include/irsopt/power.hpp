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

#ifndef IRSOPT_POWER_HPP_
#define IRSOPT_POWER_HPP_

#include <vector>

#include "irsopt/channel.hpp"
#include "irsopt/model.hpp"

namespace irsopt {

// The power subproblem for fixed beamformers: maximize
//   sum_k w_k log2(1 + a_k p_k / (sum_{i != k} b_{k,i} p_i + sigma2))
// over p > 0 with sum p <= budget.
struct PowerSubproblem {
  std::vector<double> signal;        // a_k = |v_k^H w_k|^2
  std::vector<double> interference;  // b_{k,i} row-major, diagonal unused (0)
  std::vector<double> weights;
  double sigma2 = 0.0;
  double budget = 0.0;

  std::size_t users() const { return signal.size(); }
  double b(std::size_t k, std::size_t i) const {
    return interference[k * users() + i];
  }
  // Defined for p >= 0 entrywise (a zero power simply zeroes that rate).
  double objective(const std::vector<double>& p) const;
  // Strict-positivity floor used by the solvers.
  double floor() const { return 1e-12 * budget; }
};

PowerSubproblem extract_subproblem(const PhaseVector& theta,
                                   const BeamMatrix& w, const ChannelSet& ch,
                                   const SystemConfig& cfg);

struct PowerResult {
  std::vector<double> p;
  double objective = 0.0;
  int rounds = 0;           // condensation rounds / gradient iterations
  double kkt_residual = 0.0;
  // True objective after every accepted round; non-decreasing.
  std::vector<double> round_objectives;
};

// Successive GP condensation: each round replaces every total-received-power
// posynomial with its best AM-GM monomial at the current iterate (making the
// log-variable problem concave), maximizes the condensed surrogate over the
// budget set, and repeats until the true objective gains less than tol.
// Falls back to the projected-gradient solver if a round fails to improve.
PowerResult allocate_power_gp(const PowerSubproblem& sub,
                              std::vector<double> p0, double tol);

// Projected gradient ascent on the true objective over
// {p : p >= floor, sum p <= budget}; monotone, reports the KKT residual.
PowerResult allocate_power_pg(const PowerSubproblem& sub,
                              std::vector<double> p0, double tol);

// Brute-force grid maximizer over {p : sum p <= budget} (ties broken
// lexicographically); the test oracle. Only for K <= 3.
std::vector<double> power_oracle(const PowerSubproblem& sub,
                                 int grid_resolution);

// Euclidean projection onto {p : p >= floor, sum p <= budget}.
std::vector<double> project_power(std::vector<double> p, double budget,
                                  double floor);

}  // namespace irsopt

#endif  // IRSOPT_POWER_HPP_
