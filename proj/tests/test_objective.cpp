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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "irsopt/manifold.hpp"
#include "irsopt/objective.hpp"
#include "irsopt/rng.hpp"

#if IRSOPT_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace irsopt;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Unit-scale synthetic scenario: physical path loss would push every value
// to ~1e-12 and drown the finite differences in cancellation, so gradient
// tests draw O(1) gains instead.
ChannelSet synthetic_channels(int k_users, int l_irs, int m_x, int m_y, int n,
                              Rng& rng) {
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

SystemConfig config_for(const ChannelSet& ch, Rng& rng, bool random_weights) {
  SystemConfig cfg;
  cfg.n_bs_antennas = ch.n_bs_antennas;
  cfg.irs_rows = ch.irs_rows;
  cfg.irs_cols = ch.irs_cols;
  cfg.n_irs = ch.n_irs;
  cfg.n_users = ch.n_users;
  cfg.total_power_w = static_cast<double>(ch.n_users);
  cfg.noise_power_w = 0.5;
  if (random_weights) {
    cfg.user_weights.resize(static_cast<std::size_t>(ch.n_users));
    for (double& w : cfg.user_weights) w = rng.uniform(0.5, 2.0);
  }
  return cfg;
}

CVec random_unit_phases(std::size_t dim, Rng& rng) {
  CVec theta(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    theta[i] = std::polar(1.0, kTwoPi * rng.next_double());
  }
  return theta;
}

CMat random_unit_rows(std::size_t rows, std::size_t cols, Rng& rng) {
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

std::vector<double> random_powers(int k_users, double budget, Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(k_users));
  for (double& x : p) x = rng.uniform(0.2, 1.0) * budget / k_users;
  return p;
}

// Independent scalar recomputation of v_k^H w_i by plain triple loops.
cplx naive_cross_gain(const ChannelSet& ch, const CVec& theta, const CMat& w,
                      int k, int i) {
  const int m = ch.elements_per_irs();
  cplx s = 0.0;
  for (int l = 0; l < ch.n_irs; ++l) {
    const CVec& h = ch.user_channel(l, k);
    const CMat& g = ch.bs_irs[static_cast<std::size_t>(l)];
    for (int r = 0; r < m; ++r) {
      cplx gw = 0.0;
      for (int c = 0; c < ch.n_bs_antennas; ++c) {
        gw += g(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) *
              std::conj(w(static_cast<std::size_t>(i),
                          static_cast<std::size_t>(c)));
      }
      s += std::conj(h[static_cast<std::size_t>(r)]) *
           theta[static_cast<std::size_t>(l * m + r)] * gw;
    }
  }
  return s;
}

double rel_error(const CVec& got, const CVec& want) {
  return la::norm(la::sub(got, want)) / la::norm(want);
}

double rel_error(const CMat& got, const CMat& want) {
  return la::norm(la::sub(got, want)) / la::norm(want);
}

}  // namespace

TEST_CASE("effective channels: both formulations and the cache agree") {
  Rng rng(17);
  const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
  const CVec theta = random_unit_phases(8, rng);

  const EffectiveChannels direct = effective_channels(ch, PhaseVector(theta));
  const ChannelOperators ops = ChannelOperators::build(ch);
  const EffectiveChannels cached = effective_channels(ops, theta);

  REQUIRE(direct.rows.rows() == 2);
  const double denomi = la::norm(direct.rows);
  CHECK(la::norm(la::sub(direct.rows, cached.rows)) <= 1e-12 * denomi);
}

TEST_CASE("effective channels with all phases zero sum the raw channels") {
  Rng rng(18);
  const ChannelSet ch = synthetic_channels(1, 2, 1, 2, 3, rng);
  CVec ones(4);
  for (std::size_t i = 0; i < 4; ++i) ones[i] = 1.0;
  const EffectiveChannels eff = effective_channels(ch, PhaseVector(ones));

  for (int c = 0; c < 3; ++c) {
    cplx want = 0.0;
    for (int l = 0; l < 2; ++l) {
      for (int r = 0; r < 2; ++r) {
        want += std::conj(ch.user_channel(l, 0)[static_cast<std::size_t>(r)]) *
                ch.bs_irs[static_cast<std::size_t>(l)](
                    static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      }
    }
    CHECK(std::abs(eff.rows(0, static_cast<std::size_t>(c)) - want) < 1e-12);
  }
}

TEST_CASE("effective channel for L=1, M=1 is a scalar rotation") {
  Rng rng(19);
  const ChannelSet ch = synthetic_channels(1, 1, 1, 1, 2, rng);
  CVec theta(1);
  theta[0] = std::polar(1.0, 0.77);
  const EffectiveChannels eff = effective_channels(ch, PhaseVector(theta));
  for (int c = 0; c < 2; ++c) {
    const cplx want = theta[0] * std::conj(ch.user_channel(0, 0)[0]) *
                      ch.bs_irs[0](0, static_cast<std::size_t>(c));
    CHECK(std::abs(eff.rows(0, static_cast<std::size_t>(c)) - want) < 1e-14);
  }
}

TEST_CASE("dual formulation identity on random instances") {
  Rng rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
    const CVec theta = random_unit_phases(8, rng);
    const CMat w = random_unit_rows(2, 4, rng);
    const EffectiveChannels eff = effective_channels(ch, PhaseVector(theta));
    const CMat s = cross_gains(eff.rows, w);
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 2; ++i) {
        const cplx want = naive_cross_gain(ch, theta, w, k, i);
        CHECK(std::abs(s(static_cast<std::size_t>(k),
                         static_cast<std::size_t>(i)) -
                       want) < 1e-12 * (std::abs(want) + 1.0));
      }
    }
  }
}

TEST_CASE("sinr closed forms") {
  Rng rng(21);
  const ChannelSet ch = synthetic_channels(1, 1, 2, 2, 4, rng);
  const CVec theta = random_unit_phases(4, rng);
  const CMat w = random_unit_rows(1, 4, rng);
  const EffectiveChannels eff = effective_channels(ch, PhaseVector(theta));

  SUBCASE("single user has no interference") {
    const PowerVector p({0.8}, 1.0);
    const auto out = sinr(eff, BeamMatrix(w), p, 0.5);
    const cplx s = cross_gains(eff.rows, w)(0, 0);
    CHECK(out[0] == doctest::Approx(0.8 * std::norm(s) / 0.5).epsilon(1e-12));
  }
  SUBCASE("vanishing power sends the SINR to zero") {
    const PowerVector p({1e-30}, 1.0);
    const auto out = sinr(eff, BeamMatrix(w), p, 0.5);
    CHECK(out[0] < 1e-25);
  }
  SUBCASE("nonpositive noise is rejected") {
    const PowerVector p({0.5}, 1.0);
    CHECK_THROWS_AS(sinr(eff, BeamMatrix(w), p, 0.0), std::invalid_argument);
  }
}

TEST_CASE("sinr matches the independent scalar oracle for K=2") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
    const CVec theta = random_unit_phases(8, rng);
    const CMat w = random_unit_rows(2, 4, rng);
    const std::vector<double> pv = random_powers(2, 2.0, rng);
    const double sigma2 = 0.5;

    const EffectiveChannels eff = effective_channels(ch, PhaseVector(theta));
    const auto out =
        sinr(eff, BeamMatrix(w), PowerVector(pv, 2.0), sigma2);
    for (int k = 0; k < 2; ++k) {
      const double sig =
          std::norm(naive_cross_gain(ch, theta, w, k, k)) * pv[static_cast<std::size_t>(k)];
      const double interf =
          std::norm(naive_cross_gain(ch, theta, w, k, 1 - k)) *
          pv[static_cast<std::size_t>(1 - k)];
      const double want = sig / (interf + sigma2);
      CHECK(out[static_cast<std::size_t>(k)] ==
            doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted sum rate basics") {
  Rng rng(23);
  const ChannelSet ch = synthetic_channels(1, 1, 2, 2, 4, rng);
  SystemConfig cfg = config_for(ch, rng, false);
  const CVec theta = random_unit_phases(4, rng);
  const CMat w = random_unit_rows(1, 4, rng);
  const PhaseVector tv(theta);
  const BeamMatrix wv(w);

  SUBCASE("single-user capacity form") {
    const PowerVector p({0.9}, 1.0);
    const EffectiveChannels eff = effective_channels(ch, tv);
    const cplx s = cross_gains(eff.rows, w)(0, 0);
    const double want =
        std::log2(1.0 + std::norm(s) * 0.9 / cfg.noise_power_w);
    CHECK(weighted_sum_rate(tv, wv, p, ch, cfg) ==
          doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("vanishing power limit") {
    const PowerVector p({1e-30}, 1.0);
    CHECK(weighted_sum_rate(tv, wv, p, ch, cfg) < 1e-25);
  }
  SUBCASE("doubling the weights doubles the objective") {
    const PowerVector p({0.9}, 1.0);
    const double base = weighted_sum_rate(tv, wv, p, ch, cfg);
    cfg.user_weights = {2.0};
    CHECK(weighted_sum_rate(tv, wv, p, ch, cfg) ==
          doctest::Approx(2.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("global phase invariance of the objective") {
  Rng rng(24);
  const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
  const SystemConfig cfg = config_for(ch, rng, false);
  const ObjectiveContext ctx =
      ObjectiveContext::build(ch, cfg, random_powers(2, 2.0, rng));
  const CVec theta = random_unit_phases(8, rng);
  const CMat w = random_unit_rows(2, 4, rng);
  const double f0 = sum_rate_value(ctx, theta, w);
  for (double phi : {0.3, 1.2, 2.9, -0.8}) {
    CVec rotated = theta;
    la::scale(std::polar(1.0, phi), rotated);
    CHECK(sum_rate_value(ctx, rotated, w) ==
          doctest::Approx(f0).epsilon(1e-12));
  }
}

TEST_CASE("fd_gradient on known Wirtinger derivatives") {
  SUBCASE("f(x) = |x|^2 has gradient x") {
    CVec x(1);
    x[0] = cplx(1.0, 1.0);
    const CVec g = fd_gradient(
        [](const CVec& v) { return std::norm(v[0]); }, x, 1e-5);
    CHECK(std::abs(g[0] - cplx(1.0, 1.0)) < 1e-9);
  }
  SUBCASE("constant function has zero gradient") {
    CVec x(3);
    const CVec g =
        fd_gradient([](const CVec&) { return 4.2; }, x, 1e-5);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(g[i]) == 0.0);
  }
  SUBCASE("f(x) = Re(c^H x) has gradient c/2") {
    Rng rng(31);
    CVec c(4), x(4);
    for (std::size_t i = 0; i < 4; ++i) {
      c[i] = cplx(rng.next_normal(), rng.next_normal());
      x[i] = cplx(rng.next_normal(), rng.next_normal());
    }
    const CVec g = fd_gradient(
        [&c](const CVec& v) { return la::dotc(c, v).real(); }, x, 1e-5);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(g[i] - 0.5 * c[i]) < 1e-9);
    }
  }
  SUBCASE("h must be positive") {
    CVec x(1);
    CHECK_THROWS_AS(
        fd_gradient([](const CVec&) { return 0.0; }, x, 0.0),
        std::invalid_argument);
  }
}

TEST_CASE("zero weights zero both gradients") {
  Rng rng(25);
  const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
  SystemConfig cfg = config_for(ch, rng, false);
  cfg.user_weights = {0.0, 0.0};
  ObjectiveContext ctx =
      ObjectiveContext::build(ch, cfg, random_powers(2, 2.0, rng));
  ctx.weights = {0.0, 0.0};
  const CVec theta = random_unit_phases(8, rng);
  const CMat w = random_unit_rows(2, 4, rng);
  CHECK(la::norm(sum_rate_grad_theta(ctx, theta, w)) == 0.0);
  CHECK(la::norm(sum_rate_grad_w(ctx, theta, w)) == 0.0);
}

TEST_CASE("K=1 phase gradient is the single log-quotient derivative") {
  Rng rng(32);
  const ChannelSet ch = synthetic_channels(1, 2, 2, 2, 4, rng);
  const SystemConfig cfg = config_for(ch, rng, false);
  const double p = 0.7;
  const ObjectiveContext ctx = ObjectiveContext::build(ch, cfg, {p});
  const CVec theta = random_unit_phases(8, rng);
  const CMat w = random_unit_rows(1, 4, rng);

  // With no interference the gradient collapses to
  // p * s * conj(u) / (ln2 * (sigma2 + p|s|^2)), u = A w, s = theta^T u.
  const CMat& a = ctx.ops.stacked[0];
  CVec u(8);
  for (std::size_t m = 0; m < 8; ++m) {
    u[m] = kernels::active().dotc(w.row(0), a.row(m), 4);
  }
  const cplx s = la::dotu(theta, u);
  const double total = cfg.noise_power_w + p * std::norm(s);
  const CVec grad = sum_rate_grad_theta(ctx, theta, w);
  for (std::size_t m = 0; m < 8; ++m) {
    const cplx want =
        p * s * std::conj(u[m]) / (0.69314718055994530942 * total);
    CHECK(std::abs(grad[m] - want) < 1e-12 * (std::abs(want) + 1.0));
  }
}

TEST_CASE("K=1 beamformer gradient points along the matched filter") {
  Rng rng(26);
  const ChannelSet ch = synthetic_channels(1, 1, 2, 2, 4, rng);
  const SystemConfig cfg = config_for(ch, rng, false);
  const ObjectiveContext ctx = ObjectiveContext::build(ch, cfg, {0.7});
  const CVec theta = random_unit_phases(4, rng);
  const CMat w = random_unit_rows(1, 4, rng);

  const CMat grad = sum_rate_grad_w(ctx, theta, w);
  const CMat eff = effective_channels(ctx.ops, theta).rows;
  // Row = coef * v^H with a real positive coefficient times conj(s).
  const cplx s = cross_gains(eff, w)(0, 0);
  const cplx ratio = grad(0, 0) / (std::conj(s) * eff(0, 0));
  CHECK(ratio.imag() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(ratio.real() > 0.0);
  for (std::size_t c = 1; c < 4; ++c) {
    CHECK(std::abs(grad(0, c) / (std::conj(s) * eff(0, c)) - ratio) <
          1e-10 * std::abs(ratio));
  }
}

TEST_CASE("analytic gradients match finite differences across sizes") {
  Rng rng(27);
  int instances = 0;
  for (int k_users : {1, 2}) {
    for (int l_irs : {1, 2}) {
      for (int m : {2, 4}) {
        for (int n : {2, 4}) {
          const int m_x = (m == 2) ? 1 : 2;
          const int m_y = m / m_x;
          for (int rep = 0; rep < 7; ++rep) {
            const ChannelSet ch =
                synthetic_channels(k_users, l_irs, m_x, m_y, n, rng);
            SystemConfig cfg = config_for(ch, rng, true);
            const ObjectiveContext ctx = ObjectiveContext::build(
                ch, cfg, random_powers(k_users, cfg.total_power_w, rng));
            const CVec theta =
                random_unit_phases(static_cast<std::size_t>(l_irs * m), rng);
            const CMat w = random_unit_rows(static_cast<std::size_t>(k_users),
                                            static_cast<std::size_t>(n), rng);

            const CVec gt = sum_rate_grad_theta(ctx, theta, w);
            const CVec gt_fd = fd_gradient(
                [&](const CVec& x) { return sum_rate_value(ctx, x, w); },
                theta, 1e-5);
            CHECK(rel_error(gt_fd, gt) < 1e-6);

            const CMat gw = sum_rate_grad_w(ctx, theta, w);
            const CMat gw_fd = fd_gradient(
                [&](const CMat& x) { return sum_rate_value(ctx, theta, x); },
                w, 1e-5);
            CHECK(rel_error(gw_fd, gw) < 1e-6);
            ++instances;
          }
        }
      }
    }
  }
  CHECK(instances >= 100);
}

TEST_CASE("finite-difference error decays like h^2") {
  Rng rng(28);
  const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
  const SystemConfig cfg = config_for(ch, rng, false);
  const ObjectiveContext ctx =
      ObjectiveContext::build(ch, cfg, random_powers(2, 2.0, rng));
  const CVec theta = random_unit_phases(8, rng);
  const CMat w = random_unit_rows(2, 4, rng);

  const CVec exact = sum_rate_grad_theta(ctx, theta, w);
  auto f = [&](const CVec& x) { return sum_rate_value(ctx, x, w); };
  const double err_coarse = rel_error(fd_gradient(f, theta, 1e-3), exact);
  const double err_fine = rel_error(fd_gradient(f, theta, 1e-4), exact);
  // Two decades of h shrink the truncation error by ~1e2 per decade; allow
  // generous slack for the roundoff floor.
  CHECK(err_fine < err_coarse);
  CHECK(err_coarse / err_fine > 10.0);
  CHECK(err_coarse < 1e-3);
}

#if IRSOPT_HAVE_EIGEN
// End-to-end recomputation of the weighted sum rate through Eigen: builds
// Theta_l = diag(theta_l) explicitly and never touches the kernel layer.
TEST_CASE("weighted sum rate matches an Eigen recomputation") {
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelSet ch = synthetic_channels(3, 2, 2, 2, 4, rng);
    SystemConfig cfg = config_for(ch, rng, true);
    const int m = ch.elements_per_irs();
    const int n = ch.n_bs_antennas;
    const CVec theta = random_unit_phases(static_cast<std::size_t>(2 * m), rng);
    const CMat w = random_unit_rows(3, static_cast<std::size_t>(n), rng);
    const std::vector<double> p = random_powers(3, cfg.total_power_w, rng);

    Eigen::MatrixXcd v(3, n);
    v.setZero();
    for (int l = 0; l < 2; ++l) {
      Eigen::MatrixXcd g_l(m, n);
      Eigen::VectorXcd th(m);
      for (int r = 0; r < m; ++r) {
        th(r) = theta[static_cast<std::size_t>(l * m + r)];
        for (int c = 0; c < n; ++c) {
          g_l(r, c) = ch.bs_irs[static_cast<std::size_t>(l)](
              static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
      }
      for (int k = 0; k < 3; ++k) {
        Eigen::VectorXcd h(m);
        for (int r = 0; r < m; ++r) {
          h(r) = ch.user_channel(l, k)[static_cast<std::size_t>(r)];
        }
        v.row(k) += h.adjoint() * th.asDiagonal() * g_l;
      }
    }
    double want = 0.0;
    for (int k = 0; k < 3; ++k) {
      double total = cfg.noise_power_w, interf = cfg.noise_power_w;
      for (int i = 0; i < 3; ++i) {
        Eigen::VectorXcd w_i(n);
        for (int c = 0; c < n; ++c) {
          w_i(c) = std::conj(
              w(static_cast<std::size_t>(i), static_cast<std::size_t>(c)));
        }
        // v.row(k) already stores v_k^H, so a plain product (no extra
        // conjugation) gives v_k^H w_i.
        const double term = p[static_cast<std::size_t>(i)] *
                            std::norm((v.row(k) * w_i).value());
        total += term;
        if (i != k) interf += term;
      }
      want += cfg.user_weights[static_cast<std::size_t>(k)] *
              std::log2(total / interf);
    }

    const double got = weighted_sum_rate(
        PhaseVector(theta), BeamMatrix(w),
        PowerVector(p, cfg.total_power_w), ch, cfg);
    CHECK(got == doctest::Approx(want).epsilon(1e-11));
  }
}
#endif

TEST_CASE("directional derivatives match the Riemannian gradient") {
  Rng rng(29);
  const ChannelSet ch = synthetic_channels(2, 2, 2, 2, 4, rng);
  const SystemConfig cfg = config_for(ch, rng, false);
  const ObjectiveContext ctx =
      ObjectiveContext::build(ch, cfg, random_powers(2, 2.0, rng));

  // The projected Wirtinger gradient reproduces directional derivatives up
  // to the conventional factor two: d/dt f(Ret(t d)) = 2 Re<P(df/dx*), d>.
  SUBCASE("circle manifold") {
    const CircleManifold man{8};
    const CVec theta = random_unit_phases(8, rng);
    const CMat w = random_unit_rows(2, 4, rng);
    CVec ambient(8);
    for (std::size_t i = 0; i < 8; ++i) {
      ambient[i] = cplx(rng.next_normal(), rng.next_normal());
    }
    CVec d = man.project(theta, ambient);
    la::scale(cplx(1.0 / la::norm(d), 0.0), d);

    const CVec grad =
        man.project(theta, sum_rate_grad_theta(ctx, theta, w));
    const double dd = 2.0 * man.inner(grad, d);
    const double f0 = sum_rate_value(ctx, theta, w);
    auto fd_slope = [&](double t) {
      return (sum_rate_value(ctx, man.retract(theta, d, t), w) - f0) / t;
    };
    const double err4 = std::abs(fd_slope(1e-4) - dd);
    const double err5 = std::abs(fd_slope(1e-5) - dd);
    CHECK(err4 < 1e-2 * (std::abs(dd) + 1.0));
    CHECK(err5 < err4);
  }
  SUBCASE("oblique manifold") {
    const ObliqueManifold man{2, 4};
    const CVec theta = random_unit_phases(8, rng);
    const CMat w = random_unit_rows(2, 4, rng);
    CMat ambient(2, 4);
    for (std::size_t i = 0; i < ambient.size(); ++i) {
      ambient.data()[i] = cplx(rng.next_normal(), rng.next_normal());
    }
    CMat d = man.project(w, ambient);
    la::scale(cplx(1.0 / la::norm(d), 0.0), d);

    const CMat grad = man.project(w, sum_rate_grad_w(ctx, theta, w));
    const double dd = 2.0 * man.inner(grad, d);
    const double f0 = sum_rate_value(ctx, theta, w);
    auto fd_slope = [&](double t) {
      return (sum_rate_value(ctx, theta, man.retract(w, d, t)) - f0) / t;
    };
    const double err4 = std::abs(fd_slope(1e-4) - dd);
    const double err5 = std::abs(fd_slope(1e-5) - dd);
    CHECK(err4 < 1e-2 * (std::abs(dd) + 1.0));
    CHECK(err5 < err4);
  }
}
