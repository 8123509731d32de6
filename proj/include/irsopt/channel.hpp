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

#ifndef IRSOPT_CHANNEL_HPP_
#define IRSOPT_CHANNEL_HPP_

#include <iosfwd>
#include <vector>

#include "irsopt/linalg.hpp"
#include "irsopt/model.hpp"
#include "irsopt/rng.hpp"

namespace irsopt {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

// Node positions of one scenario: BS at the origin, users on the y=0 line,
// the IRS line offset vertically.
struct Placement {
  Vec2 bs;
  std::vector<Vec2> irs;
  std::vector<Vec2> users;
  bool operator==(const Placement&) const = default;
};

// ULA steering vector, lambda/2 spacing, 0-based element index:
// entry m = exp(j*pi*m*sin(phi)).
CVec ula_steering(double phi, int n);

// UPA steering as the Kronecker product a_az(theta_az) (x) a_el(phi_el),
// azimuth factor of length m_x first.
CVec upa_steering(double phi_el, double theta_az, int m_x, int m_y);

// Rank-one BS->IRS channel  G = gamma * a_r(phi_r, theta_r) a_t(phi_t)^H,
// shape (m_x*m_y) x n.
CMat bs_irs_channel(cplx gamma, double phi_r, double theta_r, double phi_t,
                    int m_x, int m_y, int n);

// IRS->user channel h = rho * a(phi), length m_x*m_y. The single departure
// angle steers the surface as a virtual linear array, matching the one-angle
// form the rank-one model uses for this link.
CVec irs_user_channel(cplx rho, double phi, int m_x, int m_y);

// PL(d)[dB] = alpha + beta*log10(d) + xi. Throws for d <= 0.
double path_loss_db(double d, double xi, double alpha_db = 61.4,
                    double beta = 20.0);

// One realized scenario: the per-IRS BS-side channels, the per-(IRS, user)
// channels, and the gains/geometry they were generated from.
struct ChannelSet {
  int n_irs = 0;        // L
  int irs_rows = 0;     // M_x
  int irs_cols = 0;     // M_y
  int n_bs_antennas = 0;
  int n_users = 0;

  std::vector<CMat> bs_irs;          // L matrices, M x N
  std::vector<CVec> irs_user;        // L*K vectors of length M, index l*K+k
  std::vector<cplx> bs_irs_gain;     // gamma_l
  std::vector<cplx> irs_user_gain;   // rho_{l,k}, index l*K+k
  Placement placement;

  int elements_per_irs() const { return irs_rows * irs_cols; }
  const CVec& user_channel(int l, int k) const {
    return irs_user[static_cast<std::size_t>(l) * n_users + k];
  }
  cplx user_gain(int l, int k) const {
    return irs_user_gain[static_cast<std::size_t>(l) * n_users + k];
  }

  bool operator==(const ChannelSet&) const = default;
};

// Geometry of the standard layout for a validated config.
Placement make_placement(const SystemConfig& cfg);

// Draws a full scenario: placement, shadowed path-loss magnitudes, uniform
// gain phases, and geometric departure/arrival angles. Deterministic for a
// given (cfg, rng state). Throws if two nodes coincide.
ChannelSet sample_scenario(const SystemConfig& cfg, Rng& rng);

// Plain-text serialization (one complex entry per token); round-trips
// exactly. Used for cross-checking against external tools.
void save_channel_set(const ChannelSet& ch, std::ostream& os);
ChannelSet load_channel_set(std::istream& is);

}  // namespace irsopt

#endif  // IRSOPT_CHANNEL_HPP_
