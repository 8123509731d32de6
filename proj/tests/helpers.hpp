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

#ifndef IRSOPT_TESTS_HELPERS_HPP_
#define IRSOPT_TESTS_HELPERS_HPP_

#include <cmath>
#include <vector>

#include "irsopt/channel.hpp"
#include "irsopt/model.hpp"
#include "irsopt/rng.hpp"

namespace irsopt::testing {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Unit-scale random scenario (O(1) gains) for solver-level tests.
inline ChannelSet synthetic_channels(int k_users, int l_irs, int m_x, int m_y,
                                     int n, Rng& rng) {
  ChannelSet ch;
  ch.n_irs = l_irs;
  ch.irs_rows = m_x;
  ch.irs_cols = m_y;
  ch.n_bs_antennas = n;
  ch.n_users = k_users;
  for (int l = 0; l < l_irs; ++l) {
    const cplx gamma(rng.next_normal(), rng.next_normal());
    ch.bs_irs_gain.push_back(gamma);
    ch.bs_irs.push_back(bs_irs_channel(gamma, rng.uniform(-1.5, 1.5),
                                       rng.uniform(-1.5, 1.5),
                                       rng.uniform(-1.5, 1.5), m_x, m_y, n));
  }
  for (int l = 0; l < l_irs; ++l) {
    for (int k = 0; k < k_users; ++k) {
      const cplx rho(rng.next_normal(), rng.next_normal());
      ch.irs_user_gain.push_back(rho);
      ch.irs_user.push_back(
          irs_user_channel(rho, rng.uniform(-1.5, 1.5), m_x, m_y));
    }
  }
  return ch;
}

inline SystemConfig config_for(const ChannelSet& ch) {
  SystemConfig cfg;
  cfg.n_bs_antennas = ch.n_bs_antennas;
  cfg.irs_rows = ch.irs_rows;
  cfg.irs_cols = ch.irs_cols;
  cfg.n_irs = ch.n_irs;
  cfg.n_users = ch.n_users;
  cfg.total_power_w = static_cast<double>(ch.n_users);
  cfg.noise_power_w = 0.5;
  return cfg;
}

inline CVec random_unit_phases(std::size_t dim, Rng& rng) {
  CVec theta(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    theta[i] = std::polar(1.0, kTwoPi * rng.next_double());
  }
  return theta;
}

inline CMat random_unit_rows(std::size_t rows, std::size_t cols, Rng& rng) {
  CMat w(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double nrm2 = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      w(r, c) = cplx(rng.next_normal(), rng.next_normal());
      nrm2 += std::norm(w(r, c));
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (std::size_t c = 0; c < cols; ++c) w(r, c) *= inv;
  }
  return w;
}

inline std::vector<double> random_powers(int k_users, double budget,
                                         Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(k_users));
  for (double& x : p) x = rng.uniform(0.2, 1.0) * budget / k_users;
  return p;
}

// Reference physical scenario shared by the sweep and driver tests.
inline SystemConfig reference_scenario(int n, int m, int l, int k) {
  SystemConfig cfg;
  cfg.n_bs_antennas = n;
  const int rows = [&] {
    for (int a = static_cast<int>(std::sqrt(static_cast<double>(m))); a >= 1;
         --a) {
      if (m % a == 0) return a;
    }
    return 1;
  }();
  cfg.irs_rows = rows;
  cfg.irs_cols = m / rows;
  cfg.n_irs = l;
  cfg.n_users = k;
  return cfg;
}

}  // namespace irsopt::testing

#endif  // IRSOPT_TESTS_HELPERS_HPP_
