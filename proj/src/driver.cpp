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

#include "irsopt/driver.hpp"

#include <cmath>
#include <stdexcept>

#include "irsopt/objective.hpp"
#include "irsopt/rcg.hpp"

namespace irsopt {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

CVec random_phases(std::size_t dim, Rng& rng) {
  CVec theta(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    theta[i] = std::polar(1.0, kTwoPi * rng.next_double());
  }
  return theta;
}

// Matched-filter rows: row k = v_k^H / ||v_k||; a vanished effective channel
// falls back to a random unit row.
CMat matched_filter(const CMat& eff_rows, Rng& rng) {
  CMat w = eff_rows;
  for (std::size_t k = 0; k < w.rows(); ++k) {
    double nrm = std::sqrt(kernels::active().norm2sq(w.row(k), w.cols()));
    if (nrm < 1e-300) {
      cplx* row = w.row(k);
      for (std::size_t c = 0; c < w.cols(); ++c) {
        row[c] = cplx(rng.next_normal(), rng.next_normal());
      }
      nrm = std::sqrt(kernels::active().norm2sq(row, w.cols()));
    }
    kernels::active().scale(cplx(1.0 / nrm, 0.0), w.row(k), w.cols());
  }
  return w;
}

PowerSubproblem subproblem_from(const ObjectiveContext& ctx, const CVec& theta,
                                const CMat& w, double budget) {
  const EffectiveChannels eff = effective_channels(ctx.ops, theta);
  const CMat s = cross_gains(eff.rows, w);
  const std::size_t n = s.rows();
  PowerSubproblem sub;
  sub.signal.resize(n);
  sub.interference.assign(n * n, 0.0);
  sub.weights = ctx.weights;
  sub.sigma2 = ctx.sigma2;
  sub.budget = budget;
  for (std::size_t k = 0; k < n; ++k) {
    sub.signal[k] = std::norm(s(k, k));
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) sub.interference[k * n + i] = std::norm(s(k, i));
    }
  }
  return sub;
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kIterationCap: return "iteration_cap";
    case Termination::kStagnated: return "stagnated";
  }
  return "unknown";
}

InitPoint init_point(const SystemConfig& cfg, const ChannelSet& ch, Rng& rng) {
  const ChannelOperators ops = ChannelOperators::build(ch);
  CVec theta = random_phases(static_cast<std::size_t>(ops.theta_dim), rng);
  const EffectiveChannels eff = effective_channels(ops, theta);
  CMat w = matched_filter(eff.rows, rng);
  std::vector<double> p(static_cast<std::size_t>(cfg.n_users),
                        cfg.total_power_w / cfg.n_users);
  return InitPoint{PhaseVector(std::move(theta)), BeamMatrix(std::move(w)),
                   PowerVector(std::move(p), cfg.total_power_w)};
}

Solution solve(const SystemConfig& cfg, const ChannelSet& ch,
               const InitPoint& init) {
  const ValidationReport rep = validate_config(cfg);
  if (!rep.ok()) {
    throw std::invalid_argument("solve: invalid config: " + rep.joined());
  }

  ObjectiveContext ctx = ObjectiveContext::build(ch, cfg, init.p.values());
  CVec theta = init.theta.vec();
  CMat w = init.w.mat();
  std::vector<double> p = init.p.values();

  RcgOptions theta_opts;
  theta_opts.tolerance = cfg.tol_theta;
  theta_opts.max_iters = cfg.max_inner_iters;
  RcgOptions w_opts;
  w_opts.tolerance = cfg.tol_w;
  w_opts.max_iters = cfg.max_inner_iters;
  const double power_tol = 1e-10;

  const CircleManifold circle{theta.size()};
  const ObliqueManifold oblique{w.rows(), w.cols()};

  double f = sum_rate_value(ctx, theta, w);
  std::vector<OuterRecord> trace;
  trace.push_back({0, f, 0.0, 0.0, 0.0});

  Termination term = Termination::kIterationCap;
  bool any_stagnated = false;

  for (int outer = 1; outer <= cfg.max_outer_iters; ++outer) {
    const double f_start = f;
    OuterRecord rec;
    rec.iter = outer;

    auto run_stage = [&](char stage) {
      if (stage == 't') {
        const ThetaObjective obj(ctx, w);
        auto res = rcg_maximize(
            circle, [&obj](const CVec& x) { return obj.value(x); },
            [&obj](const CVec& x) { return obj.euclidean_grad(x); },
            std::move(theta), theta_opts);
        theta = std::move(res.x);
        rec.delta_theta = res.trace.final_objective() - f;
        f = res.trace.final_objective();
        if (res.trace.stop == RcgStop::kStagnated) any_stagnated = true;
      } else if (stage == 'w') {
        const WObjective obj(ctx, theta);
        auto res = rcg_maximize(
            oblique, [&obj](const CMat& x) { return obj.value(x); },
            [&obj](const CMat& x) { return obj.euclidean_grad(x); },
            std::move(w), w_opts);
        w = std::move(res.x);
        rec.delta_w = res.trace.final_objective() - f;
        f = res.trace.final_objective();
        if (res.trace.stop == RcgStop::kStagnated) any_stagnated = true;
      } else {
        const PowerSubproblem sub =
            subproblem_from(ctx, theta, w, cfg.total_power_w);
        const PowerResult pres = allocate_power_gp(sub, p, power_tol);
        p = pres.p;
        ctx.powers = p;
        rec.delta_power = pres.objective - f;
        f = pres.objective;
      }
    };

    if (cfg.stage_order == "power,theta,w") {
      run_stage('p');
      run_stage('t');
      run_stage('w');
    } else {
      run_stage('t');
      run_stage('w');
      run_stage('p');
    }

    // Every stage is a monotone ascent; anything below arithmetic noise is
    // a solver bug, not a tolerance issue.
    if (rec.delta_theta < -1e-9 || rec.delta_w < -1e-9 ||
        rec.delta_power < -1e-9) {
      throw std::logic_error("solve: a stage decreased the objective");
    }

    rec.objective = f;
    trace.push_back(rec);

    if (std::abs(f - f_start) < cfg.tol_outer) {
      term = (any_stagnated && f == f_start) ? Termination::kStagnated
                                             : Termination::kConverged;
      break;
    }
  }

  PhaseVector theta_out(std::move(theta));
  BeamMatrix w_out(std::move(w));
  PowerVector p_out(std::move(p), cfg.total_power_w);
  const double objective =
      weighted_sum_rate(theta_out, w_out, p_out, ch, cfg);
  return Solution{std::move(theta_out), std::move(w_out), std::move(p_out),
                  objective, std::move(trace), term};
}

Solution random_baseline(const SystemConfig& cfg, const ChannelSet& ch,
                         int n_draws, Rng& rng) {
  if (n_draws < 1) {
    throw std::invalid_argument("random_baseline: n_draws must be >= 1");
  }
  const std::vector<double> p(static_cast<std::size_t>(cfg.n_users),
                              cfg.total_power_w / cfg.n_users);
  ObjectiveContext ctx = ObjectiveContext::build(ch, cfg, p);

  CVec best_theta;
  CMat best_w;
  double best_f = -1.0;
  for (int r = 0; r < n_draws; ++r) {
    CVec theta =
        random_phases(static_cast<std::size_t>(ctx.ops.theta_dim), rng);
    const EffectiveChannels eff = effective_channels(ctx.ops, theta);
    CMat w = matched_filter(eff.rows, rng);
    const double f = sum_rate_value(ctx, theta, w);
    if (f > best_f) {
      best_f = f;
      best_theta = std::move(theta);
      best_w = std::move(w);
    }
  }

  PhaseVector theta_out(std::move(best_theta));
  BeamMatrix w_out(std::move(best_w));
  PowerVector p_out(p, cfg.total_power_w);
  const double objective =
      weighted_sum_rate(theta_out, w_out, p_out, ch, cfg);
  std::vector<OuterRecord> trace;
  trace.push_back({0, objective, 0.0, 0.0, 0.0});
  trace.push_back({1, objective, 0.0, 0.0, 0.0});
  return Solution{std::move(theta_out), std::move(w_out), std::move(p_out),
                  objective, std::move(trace), Termination::kConverged};
}

}  // namespace irsopt
