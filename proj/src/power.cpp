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

#include "irsopt/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "irsopt/objective.hpp"

namespace irsopt {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// sum_{i != k} b_{k,i} p_i + sigma2
double denom(const PowerSubproblem& sub, const std::vector<double>& p,
             std::size_t k) {
  double g = sub.sigma2;
  for (std::size_t i = 0; i < sub.users(); ++i) {
    if (i != k) g += sub.b(k, i) * p[i];
  }
  return g;
}

// Gradient of the true objective.
std::vector<double> true_gradient(const PowerSubproblem& sub,
                                  const std::vector<double>& p) {
  const std::size_t n = sub.users();
  std::vector<double> g_k(n), num_k(n);
  for (std::size_t k = 0; k < n; ++k) {
    g_k[k] = denom(sub, p, k);
    num_k[k] = g_k[k] + sub.signal[k] * p[k];
  }
  std::vector<double> grad(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double acc = sub.weights[m] * sub.signal[m] / num_k[m];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == m) continue;
      acc += sub.weights[k] * sub.b(k, m) * (1.0 / num_k[k] - 1.0 / g_k[k]);
    }
    grad[m] = acc / kLn2;
  }
  return grad;
}

double kkt_residual(const PowerSubproblem& sub, const std::vector<double>& p) {
  const std::vector<double> grad = true_gradient(sub, p);
  const double floor = sub.floor();
  double total = 0.0;
  for (double x : p) total += x;
  const bool budget_active = total >= sub.budget * (1.0 - 1e-9);

  double mu = 0.0;
  if (budget_active) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t m = 0; m < p.size(); ++m) {
      if (p[m] > floor * (1.0 + 1e-6)) {
        sum += grad[m];
        ++count;
      }
    }
    if (count > 0) mu = std::max(0.0, sum / count);
  }
  double res = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    if (p[m] > floor * (1.0 + 1e-6)) {
      res = std::max(res, std::abs(grad[m] - mu));
    } else {
      res = std::max(res, std::max(0.0, grad[m] - mu));
    }
  }
  return res;
}

// Best local monomial weights of every user's total-received-power
// posynomial num_k(p) = sigma2 + a_k p_k + sum_{i != k} b_{k,i} p_i,
// taken at the expansion point. By the AM-GM inequality the resulting
// monomial under-estimates num_k everywhere and touches it at the point,
// which is what makes each condensation round monotone in the true
// objective.
struct Condensed {
  const PowerSubproblem* sub;
  std::vector<double> lam_sigma;  // per user
  std::vector<double> lam_signal;
  std::vector<double> lam_interf;  // row-major K x K, diagonal unused
  std::vector<double> constant;    // p-independent part of ln num~ per user

  static Condensed at(const PowerSubproblem& s, const std::vector<double>& pb) {
    const std::size_t n = s.users();
    Condensed c;
    c.sub = &s;
    c.lam_sigma.resize(n);
    c.lam_signal.resize(n);
    c.lam_interf.assign(n * n, 0.0);
    c.constant.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double total = denom(s, pb, k) + s.signal[k] * pb[k];
      c.lam_sigma[k] = s.sigma2 / total;
      c.lam_signal[k] = s.signal[k] * pb[k] / total;
      double constant = 0.0;
      auto term = [&](double lam, double coeff) {
        // lam * (ln coeff - ln lam); zero-weight terms drop out
        if (lam > 0.0) constant += lam * (std::log(coeff) - std::log(lam));
      };
      term(c.lam_sigma[k], s.sigma2);
      term(c.lam_signal[k], s.signal[k]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        c.lam_interf[k * n + i] = s.b(k, i) * pb[i] / total;
        term(c.lam_interf[k * n + i], s.b(k, i));
      }
      c.constant[k] = constant;
    }
    return c;
  }

  // Surrogate objective sum_k w_k (ln num~_k - ln g_k) / ln2.
  double value(const std::vector<double>& p) const {
    const std::size_t n = sub->users();
    double f = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double ln_num = constant[k];
      if (lam_signal[k] > 0.0) ln_num += lam_signal[k] * std::log(p[k]);
      for (std::size_t i = 0; i < n; ++i) {
        const double lam = lam_interf[k * n + i];
        if (lam > 0.0) ln_num += lam * std::log(p[i]);
      }
      f += sub->weights[k] * (ln_num - std::log(denom(*sub, p, k)));
    }
    return f / kLn2;
  }

  std::vector<double> gradient(const std::vector<double>& p) const {
    const std::size_t n = sub->users();
    std::vector<double> g_k(n);
    for (std::size_t k = 0; k < n; ++k) g_k[k] = denom(*sub, p, k);
    std::vector<double> grad(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      double acc = sub->weights[m] * lam_signal[m] / p[m];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == m) continue;
        acc += sub->weights[k] *
               (lam_interf[k * n + m] / p[m] - sub->b(k, m) / g_k[k]);
      }
      grad[m] = acc / kLn2;
    }
    return grad;
  }
};

// Monotone projected-gradient ascent of the condensed surrogate over the
// budget set. The projection-arc direction project(p + t*grad) - p is always
// an ascent direction, so a stalled round really is surrogate-stationary,
// and the AM-GM touching property (surrogate and true gradients coincide at
// the expansion point) then makes the outer fixed point a KKT point of the
// true problem.
std::vector<double> maximize_condensed(const Condensed& c,
                                       std::vector<double> p, double tol) {
  const PowerSubproblem& sub = *c.sub;
  double fp = c.value(p);
  double t = 1.0;
  const int max_iters = 400;
  for (int it = 0; it < max_iters; ++it) {
    const std::vector<double> grad = c.gradient(p);

    bool accepted = false;
    std::vector<double> trial(p.size());
    double ft = fp;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t m = 0; m < p.size(); ++m) {
        trial[m] = p[m] + t * grad[m];
      }
      trial = project_power(trial, sub.budget, sub.floor());
      double predicted = 0.0;
      for (std::size_t m = 0; m < p.size(); ++m) {
        predicted += grad[m] * (trial[m] - p[m]);
      }
      ft = c.value(trial);
      if (std::isfinite(ft) && ft >= fp + 1e-4 * predicted && ft > fp) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const double gain = ft - fp;
    p = trial;
    fp = ft;
    t = std::min(t * 2.0, 1e9);
    if (gain < tol) break;
  }
  return p;
}

}  // namespace

double PowerSubproblem::objective(const std::vector<double>& p) const {
  double f = 0.0;
  for (std::size_t k = 0; k < users(); ++k) {
    const double g = denom(*this, p, k);
    f += weights[k] * std::log2(1.0 + signal[k] * p[k] / g);
  }
  return f;
}

PowerSubproblem extract_subproblem(const PhaseVector& theta,
                                   const BeamMatrix& w, const ChannelSet& ch,
                                   const SystemConfig& cfg) {
  const EffectiveChannels eff = effective_channels(ch, theta);
  const CMat s = cross_gains(eff.rows, w.mat());
  const std::size_t n = s.rows();
  PowerSubproblem sub;
  sub.signal.resize(n);
  sub.interference.assign(n * n, 0.0);
  sub.weights.resize(n);
  sub.sigma2 = cfg.noise_power_w;
  sub.budget = cfg.total_power_w;
  for (std::size_t k = 0; k < n; ++k) {
    sub.signal[k] = std::norm(s(k, k));
    sub.weights[k] = cfg.weight(static_cast<int>(k));
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) sub.interference[k * n + i] = std::norm(s(k, i));
    }
  }
  return sub;
}

std::vector<double> project_power(std::vector<double> p, double budget,
                                  double floor) {
  if (p.size() == 1) {
    p[0] = std::clamp(p[0], floor, budget);
    return p;
  }
  double sum = 0.0;
  double hi = 0.0;
  for (double& x : p) {
    x = std::max(x, floor);
    sum += x;
    hi = std::max(hi, x);
  }
  if (sum <= budget) return p;

  // Water level tau with sum_i max(p_i - tau, floor) = budget.
  double lo = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double tau = 0.5 * (lo + hi);
    double s = 0.0;
    for (double x : p) s += std::max(x - tau, floor);
    if (s > budget) {
      lo = tau;
    } else {
      hi = tau;
    }
  }
  // Exact level over the active set identified by the bisection.
  const double tau_bisect = 0.5 * (lo + hi);
  double active_sum = 0.0;
  int active = 0;
  for (double x : p) {
    if (x - tau_bisect > floor) {
      active_sum += x;
      ++active;
    }
  }
  if (active == 0) {
    for (double& x : p) x = floor;
    return p;
  }
  const double tau =
      (active_sum + floor * (static_cast<double>(p.size()) - active) -
       budget) /
      active;
  for (double& x : p) x = std::max(x - tau, floor);
  return p;
}

PowerResult allocate_power_pg(const PowerSubproblem& sub,
                              std::vector<double> p0, double tol) {
  if (p0.size() != sub.users()) {
    throw std::invalid_argument("allocate_power_pg: dimension mismatch");
  }
  PowerResult res;
  res.p = project_power(std::move(p0), sub.budget, sub.floor());
  double f = sub.objective(res.p);
  res.round_objectives.push_back(f);

  double t = 1.0;
  const int max_iters = 2000;
  for (int it = 1; it <= max_iters; ++it) {
    const std::vector<double> grad = true_gradient(sub, res.p);
    bool accepted = false;
    std::vector<double> trial(res.p.size());
    double ft = f;
    for (int bt = 0; bt < 60; ++bt) {
      double predicted = 0.0;
      for (std::size_t m = 0; m < res.p.size(); ++m) {
        trial[m] = res.p[m] + t * grad[m];
      }
      trial = project_power(trial, sub.budget, sub.floor());
      for (std::size_t m = 0; m < res.p.size(); ++m) {
        predicted += grad[m] * (trial[m] - res.p[m]);
      }
      ft = sub.objective(trial);
      if (std::isfinite(ft) && ft >= f + 1e-4 * predicted && ft > f) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const double gain = ft - f;
    res.p = trial;
    f = ft;
    res.rounds = it;
    res.round_objectives.push_back(f);
    t = std::min(t * 2.0, 1e9);
    if (gain < tol) break;
  }
  res.objective = f;
  res.kkt_residual = kkt_residual(sub, res.p);
  return res;
}

namespace {

// One condensation run from a fixed feasible start.
PowerResult condensation_run(const PowerSubproblem& sub, std::vector<double> p0,
                             double tol, bool& failed) {
  PowerResult res;
  res.p = project_power(std::move(p0), sub.budget, sub.floor());
  double f = sub.objective(res.p);
  res.round_objectives.push_back(f);

  const double inner_tol = std::max(tol * 0.1, 1e-15);
  const int max_rounds = 300;
  for (int round = 1; round <= max_rounds; ++round) {
    const Condensed c = Condensed::at(sub, res.p);
    std::vector<double> p_new = maximize_condensed(c, res.p, inner_tol);
    const double f_new = sub.objective(p_new);
    if (!std::isfinite(f_new) || f_new < f - 1e-9) {
      failed = true;
      return res;
    }
    if (f_new <= f) {
      break;  // surrogate stationarity
    }
    const double gain = f_new - f;
    res.p = std::move(p_new);
    f = f_new;
    res.rounds = round;
    res.round_objectives.push_back(f);
    if (gain < tol) break;
  }
  res.objective = f;
  return res;
}

}  // namespace

PowerResult allocate_power_gp(const PowerSubproblem& sub,
                              std::vector<double> p0, double tol) {
  if (p0.size() != sub.users()) {
    throw std::invalid_argument("allocate_power_gp: dimension mismatch");
  }
  double sum = 0.0;
  for (double x : p0) {
    if (!(x > 0.0)) {
      throw std::invalid_argument(
          "allocate_power_gp: starting powers must be strictly positive");
    }
    sum += x;
  }
  if (sum > sub.budget * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "allocate_power_gp: starting powers exceed the budget");
  }

  // Condensation is a local method and the sum rate is not concave: a start
  // dominated by interference can settle below a shut-some-users-off
  // optimum. Run it from the caller's point plus the near-corner splits and
  // keep the best true objective. The caller's start is always included, so
  // the result never falls below objective(p0).
  const std::size_t n = sub.users();
  std::vector<std::vector<double>> starts;
  starts.push_back(std::move(p0));
  if (n > 1) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> corner(n, sub.budget * 0.02 / static_cast<double>(n));
      corner[k] = sub.budget * 0.98;
      starts.push_back(std::move(corner));
    }
  }

  bool failed = false;
  PowerResult best = condensation_run(sub, starts[0], tol, failed);
  if (failed) {
    // Condensation failed to behave; hand the subproblem to the
    // projected-gradient solver.
    return allocate_power_pg(sub, std::move(starts[0]), tol);
  }
  for (std::size_t s = 1; s < starts.size(); ++s) {
    bool corner_failed = false;
    PowerResult run = condensation_run(sub, starts[s], tol, corner_failed);
    if (!corner_failed && run.objective > best.objective) {
      best = std::move(run);
    }
  }
  best.kkt_residual = kkt_residual(sub, best.p);
  return best;
}

std::vector<double> power_oracle(const PowerSubproblem& sub,
                                 int grid_resolution) {
  const std::size_t n = sub.users();
  if (n > 3) {
    throw std::invalid_argument("power_oracle: only defined for K <= 3");
  }
  if (grid_resolution < 1) {
    throw std::invalid_argument("power_oracle: resolution must be >= 1");
  }
  const int r = grid_resolution;
  const double unit = sub.budget / r;

  std::vector<double> best;
  double best_f = -std::numeric_limits<double>::infinity();
  std::vector<double> p(n, 0.0);
  auto consider = [&]() {
    const double f = sub.objective(p);
    if (f > best_f) {
      best_f = f;
      best = p;
    }
  };

  if (n == 1) {
    for (int i = 0; i <= r; ++i) {
      p[0] = unit * i;
      consider();
    }
  } else if (n == 2) {
    for (int i = 0; i <= r; ++i) {
      p[0] = unit * i;
      for (int j = 0; j + i <= r; ++j) {
        p[1] = unit * j;
        consider();
      }
    }
  } else {
    for (int i = 0; i <= r; ++i) {
      p[0] = unit * i;
      for (int j = 0; j + i <= r; ++j) {
        p[1] = unit * j;
        for (int l = 0; l + j + i <= r; ++l) {
          p[2] = unit * l;
          consider();
        }
      }
    }
  }
  return best;
}

}  // namespace irsopt
