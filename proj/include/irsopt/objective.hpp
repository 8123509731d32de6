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

#ifndef IRSOPT_OBJECTIVE_HPP_
#define IRSOPT_OBJECTIVE_HPP_

#include <functional>
#include <vector>

#include "irsopt/channel.hpp"
#include "irsopt/linalg.hpp"
#include "irsopt/model.hpp"

namespace irsopt {

// Stacked per-user channel operators A_k (LM x N) with
// A_k = vstack_l diag(conj(h_{l,k})) G_l, so that v_k^H = theta^T A_k.
// Everything the objective needs about a scenario is captured here once.
struct ChannelOperators {
  std::vector<CMat> stacked;  // K matrices, LM x N
  int theta_dim = 0;          // L*M
  int n_bs_antennas = 0;
  int n_users = 0;

  static ChannelOperators build(const ChannelSet& ch);
};

// Cached effective channels: row k holds v_k^H (length N).
struct EffectiveChannels {
  CMat rows;
};

// Recomputes v_k^H = sum_l h_{r,l,k}^H diag(theta_l) G_l directly from the
// channel realization (the diag(theta) formulation).
EffectiveChannels effective_channels(const ChannelSet& ch,
                                     const PhaseVector& theta);

// Same quantity through the stacked operators (the theta^T diag(h^*) G
// formulation); the two must agree to roundoff.
EffectiveChannels effective_channels(const ChannelOperators& ops,
                                     const CVec& theta);

// Cross-gain table s_{k,i} = v_k^H w_i (row i of w stores w_i^H).
CMat cross_gains(const CMat& eff_rows, const CMat& w);

// SINR_k = p_k |v_k^H w_k|^2 / (sum_{i != k} p_i |v_k^H w_i|^2 + sigma2).
std::vector<double> sinr(const EffectiveChannels& eff, const BeamMatrix& w,
                         const PowerVector& p, double sigma2);

double weighted_sum_rate(const PhaseVector& theta, const BeamMatrix& w,
                         const PowerVector& p, const ChannelSet& ch,
                         const SystemConfig& cfg);

// Wirtinger gradient d f / d theta^* of the weighted sum rate (length L*M).
CVec grad_theta(const PhaseVector& theta, const BeamMatrix& w,
                const PowerVector& p, const ChannelSet& ch,
                const SystemConfig& cfg);

// Wirtinger gradient d f / d W^* (K x N).
CMat grad_w(const PhaseVector& theta, const BeamMatrix& w,
            const PowerVector& p, const ChannelSet& ch,
            const SystemConfig& cfg);

// Central-difference Wirtinger gradient (d f / d x^* = (df/dRe + j df/dIm)/2)
// of an arbitrary real-valued function; the validation oracle for the two
// analytic gradients above.
CVec fd_gradient(const std::function<double(const CVec&)>& f, const CVec& x,
                 double h);
CMat fd_gradient(const std::function<double(const CMat&)>& f, const CMat& x,
                 double h);

// ---------------------------------------------------------------------------
// Raw evaluation layer. These operate on unconstrained ambient points (the
// finite-difference oracle perturbs off the manifolds) and carry the solver's
// per-stage caches.

struct ObjectiveContext {
  ChannelOperators ops;
  std::vector<double> powers;
  std::vector<double> weights;
  double sigma2 = 0.0;

  static ObjectiveContext build(const ChannelSet& ch, const SystemConfig& cfg,
                                const std::vector<double>& powers);
};

double sum_rate_value(const ObjectiveContext& ctx, const CVec& theta,
                      const CMat& w);
CVec sum_rate_grad_theta(const ObjectiveContext& ctx, const CVec& theta,
                         const CMat& w);
CMat sum_rate_grad_w(const ObjectiveContext& ctx, const CVec& theta,
                     const CMat& w);

// Fixed-W view of the objective: the per-pair vectors u_{k,i} = A_k w_i are
// independent of theta, so one f1 evaluation costs K^2 dot products.
class ThetaObjective {
 public:
  ThetaObjective(const ObjectiveContext& ctx, const CMat& w);
  double value(const CVec& theta) const;
  CVec euclidean_grad(const CVec& theta) const;

 private:
  const ObjectiveContext& ctx_;
  std::vector<CMat> u_;  // u_[k] is K x LM, row i = (A_k w_i)^T
};

// Fixed-theta view: the effective channel rows are frozen.
class WObjective {
 public:
  WObjective(const ObjectiveContext& ctx, const CVec& theta);
  double value(const CMat& w) const;
  CMat euclidean_grad(const CMat& w) const;
  const CMat& effective_rows() const { return eff_; }

 private:
  const ObjectiveContext& ctx_;
  CMat eff_;  // K x N, row k = v_k^H
};

}  // namespace irsopt

#endif  // IRSOPT_OBJECTIVE_HPP_
