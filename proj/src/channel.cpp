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

#include "irsopt/channel.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace irsopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

// In-plane angle of the directed link a -> b, used for all linear-array
// steering. The surface's own arrival decomposition splits the same link
// into an elevation (tilt above the horizontal, driven by the vertical
// offset) and an azimuth measured from the line normal.
double link_angle(const Vec2& a, const Vec2& b) {
  return std::atan2(b.y - a.y, b.x - a.x);
}

double link_elevation(const Vec2& from, const Vec2& to) {
  return std::atan2(to.y - from.y, std::abs(to.x - from.x));
}

double link_azimuth(const Vec2& from, const Vec2& to) {
  return std::atan2(to.x - from.x, to.y - from.y);
}

}  // namespace

CVec ula_steering(double phi, int n) {
  if (n < 1) throw std::invalid_argument("ula_steering: n must be >= 1");
  CVec a(static_cast<std::size_t>(n));
  const double step = kPi * std::sin(phi);
  for (int m = 0; m < n; ++m) {
    a[static_cast<std::size_t>(m)] = std::polar(1.0, step * m);
  }
  return a;
}

CVec upa_steering(double phi_el, double theta_az, int m_x, int m_y) {
  const CVec az = ula_steering(theta_az, m_x);
  const CVec el = ula_steering(phi_el, m_y);
  CVec out(az.size() * el.size());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < az.size(); ++i) {
    for (std::size_t j = 0; j < el.size(); ++j) {
      out[idx++] = az[i] * el[j];
    }
  }
  return out;
}

CMat bs_irs_channel(cplx gamma, double phi_r, double theta_r, double phi_t,
                    int m_x, int m_y, int n) {
  const CVec ar = upa_steering(phi_r, theta_r, m_x, m_y);
  const CVec at = ula_steering(phi_t, n);
  CMat g(ar.size(), at.size());
  for (std::size_t r = 0; r < ar.size(); ++r) {
    const cplx lead = gamma * ar[r];
    for (std::size_t c = 0; c < at.size(); ++c) {
      g(r, c) = lead * std::conj(at[c]);
    }
  }
  return g;
}

CVec irs_user_channel(cplx rho, double phi, int m_x, int m_y) {
  CVec h = ula_steering(phi, m_x * m_y);
  la::scale(rho, h);
  return h;
}

double path_loss_db(double d, double xi, double alpha_db, double beta) {
  if (!(d > 0.0)) throw std::invalid_argument("path_loss_db: d must be > 0");
  return alpha_db + beta * std::log10(d) + xi;
}

Placement make_placement(const SystemConfig& cfg) {
  Placement p;
  p.bs = {0.0, 0.0};
  p.irs.resize(static_cast<std::size_t>(cfg.n_irs));
  if (cfg.n_irs == 1) {
    p.irs[0] = {cfg.first_irs_distance_m, cfg.vertical_offset_m};
  } else {
    const double span = cfg.irs_line_end_m - cfg.first_irs_distance_m;
    for (int l = 0; l < cfg.n_irs; ++l) {
      p.irs[static_cast<std::size_t>(l)] = {
          cfg.first_irs_distance_m + span * l / (cfg.n_irs - 1),
          cfg.vertical_offset_m};
    }
  }
  p.users.resize(static_cast<std::size_t>(cfg.n_users));
  for (int k = 0; k < cfg.n_users; ++k) {
    p.users[static_cast<std::size_t>(k)] = {
        cfg.first_user_distance_m + cfg.user_spacing_m * k, 0.0};
  }
  return p;
}

ChannelSet sample_scenario(const SystemConfig& cfg, Rng& rng) {
  const ValidationReport rep = validate_config(cfg);
  if (!rep.ok()) {
    throw std::invalid_argument("sample_scenario: invalid config: " +
                                rep.joined());
  }

  ChannelSet ch;
  ch.n_irs = cfg.n_irs;
  ch.irs_rows = cfg.irs_rows;
  ch.irs_cols = cfg.irs_cols;
  ch.n_bs_antennas = cfg.n_bs_antennas;
  ch.n_users = cfg.n_users;
  ch.placement = make_placement(cfg);

  std::vector<Vec2> nodes;
  nodes.push_back(ch.placement.bs);
  nodes.insert(nodes.end(), ch.placement.irs.begin(), ch.placement.irs.end());
  nodes.insert(nodes.end(), ch.placement.users.begin(),
               ch.placement.users.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) {
        throw std::invalid_argument(
            "sample_scenario: two nodes share identical coordinates");
      }
    }
  }

  const double shadow_sigma = std::sqrt(cfg.shadowing_var_db2);
  // The shadowing normal is drawn even when the variance is zero so the
  // stream layout does not depend on it.
  auto draw_gain = [&](double d) {
    const double xi = shadow_sigma * rng.next_normal();
    const double pl =
        path_loss_db(d, xi, cfg.path_loss_alpha_db, cfg.path_loss_beta);
    const double mag = std::pow(10.0, -pl / 20.0);
    const double phase = 2.0 * kPi * rng.next_double();
    return std::polar(mag, phase);
  };

  ch.bs_irs.reserve(static_cast<std::size_t>(cfg.n_irs));
  ch.bs_irs_gain.reserve(static_cast<std::size_t>(cfg.n_irs));
  for (int l = 0; l < cfg.n_irs; ++l) {
    const Vec2 irs = ch.placement.irs[static_cast<std::size_t>(l)];
    const cplx gamma = draw_gain(distance(ch.placement.bs, irs));
    const double phi_t = link_angle(ch.placement.bs, irs);
    const double phi_r = link_elevation(irs, ch.placement.bs);
    const double theta_r = link_azimuth(irs, ch.placement.bs);
    ch.bs_irs_gain.push_back(gamma);
    ch.bs_irs.push_back(bs_irs_channel(gamma, phi_r, theta_r, phi_t,
                                       cfg.irs_rows, cfg.irs_cols,
                                       cfg.n_bs_antennas));
  }

  ch.irs_user.reserve(static_cast<std::size_t>(cfg.n_irs) * cfg.n_users);
  ch.irs_user_gain.reserve(static_cast<std::size_t>(cfg.n_irs) * cfg.n_users);
  for (int l = 0; l < cfg.n_irs; ++l) {
    const Vec2 irs = ch.placement.irs[static_cast<std::size_t>(l)];
    for (int k = 0; k < cfg.n_users; ++k) {
      const Vec2 user = ch.placement.users[static_cast<std::size_t>(k)];
      const cplx rho = draw_gain(distance(irs, user));
      const double phi = link_angle(irs, user);
      ch.irs_user_gain.push_back(rho);
      ch.irs_user.push_back(
          irs_user_channel(rho, phi, cfg.irs_rows, cfg.irs_cols));
    }
  }

  return ch;
}

namespace {

void write_cplx(std::ostream& os, cplx z) {
  os << '(' << z.real() << ',' << z.imag() << ')';
}

cplx read_cplx(std::istream& is) {
  cplx z;
  is >> z;
  if (!is) throw std::runtime_error("channel set: malformed complex token");
  return z;
}

double read_double(std::istream& is) {
  double d;
  is >> d;
  if (!is) throw std::runtime_error("channel set: malformed number");
  return d;
}

}  // namespace

void save_channel_set(const ChannelSet& ch, std::ostream& os) {
  os << std::setprecision(17);
  os << "irsopt-channels 1\n";
  os << ch.n_irs << ' ' << ch.irs_rows << ' ' << ch.irs_cols << ' '
     << ch.n_bs_antennas << ' ' << ch.n_users << "\n";

  os << "gains_bs_irs\n";
  for (const cplx g : ch.bs_irs_gain) {
    write_cplx(os, g);
    os << '\n';
  }
  os << "gains_irs_user\n";
  for (const cplx g : ch.irs_user_gain) {
    write_cplx(os, g);
    os << '\n';
  }

  os << "bs_irs\n";
  for (const CMat& g : ch.bs_irs) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      write_cplx(os, g.data()[i]);
      os << ((i + 1) % g.cols() == 0 ? '\n' : ' ');
    }
  }
  os << "irs_user\n";
  for (const CVec& h : ch.irs_user) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      write_cplx(os, h[i]);
      os << (i + 1 == h.size() ? '\n' : ' ');
    }
  }

  os << "placement\n";
  os << ch.placement.bs.x << ' ' << ch.placement.bs.y << '\n';
  for (const Vec2& v : ch.placement.irs) os << v.x << ' ' << v.y << '\n';
  for (const Vec2& v : ch.placement.users) os << v.x << ' ' << v.y << '\n';
}

ChannelSet load_channel_set(std::istream& is) {
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (!is || magic != "irsopt-channels" || version != 1) {
    throw std::runtime_error("channel set: unrecognized header");
  }

  ChannelSet ch;
  is >> ch.n_irs >> ch.irs_rows >> ch.irs_cols >> ch.n_bs_antennas >>
      ch.n_users;
  if (!is || ch.n_irs < 1 || ch.irs_rows < 1 || ch.irs_cols < 1 ||
      ch.n_bs_antennas < 1 || ch.n_users < 1) {
    throw std::runtime_error("channel set: bad dimensions");
  }
  const std::size_t m = static_cast<std::size_t>(ch.elements_per_irs());
  const std::size_t n = static_cast<std::size_t>(ch.n_bs_antennas);
  const std::size_t links = static_cast<std::size_t>(ch.n_irs) * ch.n_users;

  auto expect = [&is](const char* tag) {
    std::string word;
    is >> word;
    if (!is || word != tag) {
      throw std::runtime_error(std::string("channel set: expected section ") +
                               tag);
    }
  };

  expect("gains_bs_irs");
  ch.bs_irs_gain.resize(static_cast<std::size_t>(ch.n_irs));
  for (auto& g : ch.bs_irs_gain) g = read_cplx(is);
  expect("gains_irs_user");
  ch.irs_user_gain.resize(links);
  for (auto& g : ch.irs_user_gain) g = read_cplx(is);

  expect("bs_irs");
  ch.bs_irs.assign(static_cast<std::size_t>(ch.n_irs), CMat(m, n));
  for (CMat& g : ch.bs_irs) {
    for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = read_cplx(is);
  }
  expect("irs_user");
  ch.irs_user.assign(links, CVec(m));
  for (CVec& h : ch.irs_user) {
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = read_cplx(is);
  }

  expect("placement");
  ch.placement.bs.x = read_double(is);
  ch.placement.bs.y = read_double(is);
  ch.placement.irs.resize(static_cast<std::size_t>(ch.n_irs));
  for (Vec2& v : ch.placement.irs) {
    v.x = read_double(is);
    v.y = read_double(is);
  }
  ch.placement.users.resize(static_cast<std::size_t>(ch.n_users));
  for (Vec2& v : ch.placement.users) {
    v.x = read_double(is);
    v.y = read_double(is);
  }
  return ch;
}

}  // namespace irsopt
