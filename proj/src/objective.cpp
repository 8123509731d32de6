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

#include "irsopt/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace irsopt {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Per-user totals from the cross-gain table S (s_{k,i} = v_k^H w_i):
// total[k] = sigma2 + sum_i p_i |s_{k,i}|^2, and the same sum without i = k.
struct LinkTotals {
  std::vector<double> total;
  std::vector<double> interference;
};

LinkTotals totals_from_s(const CMat& s, const std::vector<double>& p,
                         double sigma2) {
  const std::size_t k_users = s.rows();
  LinkTotals t;
  t.total.assign(k_users, sigma2);
  t.interference.assign(k_users, sigma2);
  for (std::size_t k = 0; k < k_users; ++k) {
    for (std::size_t i = 0; i < k_users; ++i) {
      const double term = p[i] * std::norm(s(k, i));
      t.total[k] += term;
      if (i != k) t.interference[k] += term;
    }
  }
  return t;
}

double rate_sum(const CMat& s, const std::vector<double>& p, double sigma2,
                const std::vector<double>& weights) {
  const LinkTotals t = totals_from_s(s, p, sigma2);
  double f = 0.0;
  for (std::size_t k = 0; k < s.rows(); ++k) {
    const double sinr_k =
        p[k] * std::norm(s(k, k)) / t.interference[k];
    f += weights[k] * std::log2(1.0 + sinr_k);
  }
  return f;
}

std::vector<double> resolved_weights(const SystemConfig& cfg) {
  if (!cfg.user_weights.empty()) return cfg.user_weights;
  return std::vector<double>(static_cast<std::size_t>(cfg.n_users), 1.0);
}

}  // namespace

ChannelOperators ChannelOperators::build(const ChannelSet& ch) {
  ChannelOperators ops;
  const std::size_t m = static_cast<std::size_t>(ch.elements_per_irs());
  const std::size_t n = static_cast<std::size_t>(ch.n_bs_antennas);
  ops.theta_dim = ch.n_irs * static_cast<int>(m);
  ops.n_bs_antennas = ch.n_bs_antennas;
  ops.n_users = ch.n_users;
  ops.stacked.reserve(static_cast<std::size_t>(ch.n_users));
  for (int k = 0; k < ch.n_users; ++k) {
    CMat a(static_cast<std::size_t>(ops.theta_dim), n);
    for (int l = 0; l < ch.n_irs; ++l) {
      const CVec& h = ch.user_channel(l, k);
      const CMat& g = ch.bs_irs[static_cast<std::size_t>(l)];
      for (std::size_t r = 0; r < m; ++r) {
        cplx* dst = a.row(static_cast<std::size_t>(l) * m + r);
        const cplx scale = std::conj(h[r]);
        const cplx* src = g.row(r);
        for (std::size_t c = 0; c < n; ++c) dst[c] = scale * src[c];
      }
    }
    ops.stacked.push_back(std::move(a));
  }
  return ops;
}

EffectiveChannels effective_channels(const ChannelSet& ch,
                                     const PhaseVector& theta) {
  const std::size_t m = static_cast<std::size_t>(ch.elements_per_irs());
  const std::size_t n = static_cast<std::size_t>(ch.n_bs_antennas);
  if (theta.size() != m * static_cast<std::size_t>(ch.n_irs)) {
    throw std::invalid_argument("effective_channels: theta dimension");
  }
  EffectiveChannels eff;
  eff.rows = CMat(static_cast<std::size_t>(ch.n_users), n);
  CVec weighted(m);
  for (int k = 0; k < ch.n_users; ++k) {
    cplx* out = eff.rows.row(static_cast<std::size_t>(k));
    for (int l = 0; l < ch.n_irs; ++l) {
      const CVec& h = ch.user_channel(l, k);
      const CMat& g = ch.bs_irs[static_cast<std::size_t>(l)];
      // h^H diag(theta_l) row by row: entry m scales G_l row m.
      kernels::active().hadamard_conj(
          h.data(), theta.vec().data() + static_cast<std::size_t>(l) * m,
          weighted.data(), m);
      for (std::size_t r = 0; r < m; ++r) {
        kernels::active().axpy(weighted[r], g.row(r), out, n);
      }
    }
  }
  return eff;
}

EffectiveChannels effective_channels(const ChannelOperators& ops,
                                     const CVec& theta) {
  if (theta.size() != static_cast<std::size_t>(ops.theta_dim)) {
    throw std::invalid_argument("effective_channels: theta dimension");
  }
  EffectiveChannels eff;
  eff.rows = CMat(static_cast<std::size_t>(ops.n_users),
                  static_cast<std::size_t>(ops.n_bs_antennas));
  for (int k = 0; k < ops.n_users; ++k) {
    const CMat& a = ops.stacked[static_cast<std::size_t>(k)];
    cplx* out = eff.rows.row(static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      kernels::active().axpy(theta[r], a.row(r), out, a.cols());
    }
  }
  return eff;
}

// s_{k,i} = v_k^H w_i from the effective rows and the stacked beamformer
// (row i of w stores w_i^H, hence the conjugated dot).
CMat cross_gains(const CMat& eff, const CMat& w) {
  if (eff.cols() != w.cols() || eff.rows() != w.rows()) {
    throw std::invalid_argument("cross_gains: shape mismatch");
  }
  const std::size_t k_users = eff.rows();
  CMat s(k_users, k_users);
  for (std::size_t k = 0; k < k_users; ++k) {
    for (std::size_t i = 0; i < k_users; ++i) {
      s(k, i) =
          kernels::active().dotc(w.row(i), eff.row(k), w.cols());
    }
  }
  return s;
}

std::vector<double> sinr(const EffectiveChannels& eff, const BeamMatrix& w,
                         const PowerVector& p, double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sinr: sigma2 must be > 0");
  if (p.size() != eff.rows.rows()) {
    throw std::invalid_argument("sinr: power dimension");
  }
  const CMat s = cross_gains(eff.rows, w.mat());
  const LinkTotals t = totals_from_s(s, p.values(), sigma2);
  std::vector<double> out(s.rows());
  for (std::size_t k = 0; k < s.rows(); ++k) {
    out[k] = p[k] * std::norm(s(k, k)) / t.interference[k];
  }
  return out;
}

double weighted_sum_rate(const PhaseVector& theta, const BeamMatrix& w,
                         const PowerVector& p, const ChannelSet& ch,
                         const SystemConfig& cfg) {
  const EffectiveChannels eff = effective_channels(ch, theta);
  const CMat s = cross_gains(eff.rows, w.mat());
  return rate_sum(s, p.values(), cfg.noise_power_w, resolved_weights(cfg));
}

ObjectiveContext ObjectiveContext::build(const ChannelSet& ch,
                                         const SystemConfig& cfg,
                                         const std::vector<double>& powers) {
  ObjectiveContext ctx;
  ctx.ops = ChannelOperators::build(ch);
  ctx.powers = powers;
  ctx.weights = resolved_weights(cfg);
  ctx.sigma2 = cfg.noise_power_w;
  return ctx;
}

double sum_rate_value(const ObjectiveContext& ctx, const CVec& theta,
                      const CMat& w) {
  const EffectiveChannels eff = effective_channels(ctx.ops, theta);
  const CMat s = cross_gains(eff.rows, w);
  return rate_sum(s, ctx.powers, ctx.sigma2, ctx.weights);
}

CVec sum_rate_grad_theta(const ObjectiveContext& ctx, const CVec& theta,
                         const CMat& w) {
  ThetaObjective obj(ctx, w);
  return obj.euclidean_grad(theta);
}

CMat sum_rate_grad_w(const ObjectiveContext& ctx, const CVec& theta,
                     const CMat& w) {
  WObjective obj(ctx, theta);
  return obj.euclidean_grad(w);
}

CVec grad_theta(const PhaseVector& theta, const BeamMatrix& w,
                const PowerVector& p, const ChannelSet& ch,
                const SystemConfig& cfg) {
  const ObjectiveContext ctx = ObjectiveContext::build(ch, cfg, p.values());
  return sum_rate_grad_theta(ctx, theta.vec(), w.mat());
}

CMat grad_w(const PhaseVector& theta, const BeamMatrix& w,
            const PowerVector& p, const ChannelSet& ch,
            const SystemConfig& cfg) {
  const ObjectiveContext ctx = ObjectiveContext::build(ch, cfg, p.values());
  return sum_rate_grad_w(ctx, theta.vec(), w.mat());
}

ThetaObjective::ThetaObjective(const ObjectiveContext& ctx, const CMat& w)
    : ctx_(ctx) {
  const std::size_t k_users = static_cast<std::size_t>(ctx.ops.n_users);
  const std::size_t dim = static_cast<std::size_t>(ctx.ops.theta_dim);
  if (w.rows() != k_users ||
      w.cols() != static_cast<std::size_t>(ctx.ops.n_bs_antennas)) {
    throw std::invalid_argument("ThetaObjective: beamformer shape");
  }
  u_.reserve(k_users);
  for (std::size_t k = 0; k < k_users; ++k) {
    const CMat& a = ctx.ops.stacked[k];
    CMat uk(k_users, dim);
    for (std::size_t i = 0; i < k_users; ++i) {
      cplx* row = uk.row(i);
      // u_{k,i}[m] = sum_n A_k[m][n] conj(W[i][n])
      for (std::size_t m = 0; m < dim; ++m) {
        row[m] = kernels::active().dotc(w.row(i), a.row(m), a.cols());
      }
    }
    u_.push_back(std::move(uk));
  }
}

double ThetaObjective::value(const CVec& theta) const {
  if (theta.size() != static_cast<std::size_t>(ctx_.ops.theta_dim)) {
    throw std::invalid_argument("ThetaObjective: theta dimension");
  }
  const std::size_t k_users = u_.size();
  CMat s(k_users, k_users);
  for (std::size_t k = 0; k < k_users; ++k) {
    for (std::size_t i = 0; i < k_users; ++i) {
      s(k, i) = kernels::active().dotu(theta.data(), u_[k].row(i),
                                       theta.size());
    }
  }
  return rate_sum(s, ctx_.powers, ctx_.sigma2, ctx_.weights);
}

CVec ThetaObjective::euclidean_grad(const CVec& theta) const {
  if (theta.size() != static_cast<std::size_t>(ctx_.ops.theta_dim)) {
    throw std::invalid_argument("ThetaObjective: theta dimension");
  }
  const std::size_t k_users = u_.size();
  CMat s(k_users, k_users);
  for (std::size_t k = 0; k < k_users; ++k) {
    for (std::size_t i = 0; i < k_users; ++i) {
      s(k, i) = kernels::active().dotu(theta.data(), u_[k].row(i),
                                       theta.size());
    }
  }
  const LinkTotals t = totals_from_s(s, ctx_.powers, ctx_.sigma2);
  CVec grad(theta.size());
  for (std::size_t k = 0; k < k_users; ++k) {
    const double wk = ctx_.weights[k];
    if (wk == 0.0) continue;
    for (std::size_t i = 0; i < k_users; ++i) {
      const double quotient =
          1.0 / t.total[k] - (i != k ? 1.0 / t.interference[k] : 0.0);
      const cplx coef = wk * ctx_.powers[i] * s(k, i) * quotient / kLn2;
      kernels::active().axpyc(coef, u_[k].row(i), grad.data(), grad.size());
    }
  }
  return grad;
}

WObjective::WObjective(const ObjectiveContext& ctx, const CVec& theta)
    : ctx_(ctx), eff_(effective_channels(ctx.ops, theta).rows) {}

double WObjective::value(const CMat& w) const {
  if (w.rows() != eff_.rows() || w.cols() != eff_.cols()) {
    throw std::invalid_argument("WObjective: beamformer shape");
  }
  const CMat s = cross_gains(eff_, w);
  return rate_sum(s, ctx_.powers, ctx_.sigma2, ctx_.weights);
}

CMat WObjective::euclidean_grad(const CMat& w) const {
  if (w.rows() != eff_.rows() || w.cols() != eff_.cols()) {
    throw std::invalid_argument("WObjective: beamformer shape");
  }
  const CMat s = cross_gains(eff_, w);
  const LinkTotals t = totals_from_s(s, ctx_.powers, ctx_.sigma2);
  const std::size_t k_users = s.rows();
  CMat grad(w.rows(), w.cols());
  for (std::size_t j = 0; j < k_users; ++j) {
    cplx* row = grad.row(j);
    for (std::size_t k = 0; k < k_users; ++k) {
      const double quotient =
          1.0 / t.total[k] - (j != k ? 1.0 / t.interference[k] : 0.0);
      const cplx coef =
          ctx_.weights[k] * ctx_.powers[j] * std::conj(s(k, j)) * quotient /
          kLn2;
      kernels::active().axpy(coef, eff_.row(k), row, w.cols());
    }
  }
  return grad;
}

CVec fd_gradient(const std::function<double(const CVec&)>& f, const CVec& x,
                 double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be > 0");
  CVec grad(x.size());
  CVec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx saved = probe[i];
    probe[i] = saved + h;
    const double f_re_plus = f(probe);
    probe[i] = saved - h;
    const double f_re_minus = f(probe);
    probe[i] = saved + cplx(0.0, h);
    const double f_im_plus = f(probe);
    probe[i] = saved - cplx(0.0, h);
    const double f_im_minus = f(probe);
    probe[i] = saved;
    grad[i] = cplx((f_re_plus - f_re_minus) / (2.0 * h),
                   (f_im_plus - f_im_minus) / (2.0 * h)) *
              0.5;
  }
  return grad;
}

CMat fd_gradient(const std::function<double(const CMat&)>& f, const CMat& x,
                 double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be > 0");
  CMat grad(x.rows(), x.cols());
  CMat probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx saved = probe.data()[i];
    probe.data()[i] = saved + h;
    const double f_re_plus = f(probe);
    probe.data()[i] = saved - h;
    const double f_re_minus = f(probe);
    probe.data()[i] = saved + cplx(0.0, h);
    const double f_im_plus = f(probe);
    probe.data()[i] = saved - cplx(0.0, h);
    const double f_im_minus = f(probe);
    probe.data()[i] = saved;
    grad.data()[i] = cplx((f_re_plus - f_re_minus) / (2.0 * h),
                          (f_im_plus - f_im_minus) / (2.0 * h)) *
                     0.5;
  }
  return grad;
}

}  // namespace irsopt
