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

#ifndef IRSOPT_RCG_HPP_
#define IRSOPT_RCG_HPP_

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "irsopt/linalg.hpp"
#include "irsopt/manifold.hpp"

namespace irsopt {

// Riemannian conjugate-gradient ascent: Polak-Ribiere directions with
// projection as the vector transport, Armijo backtracking, and an
// objective-stagnation stop. Shared by the passive (circle) and active
// (Oblique) beamforming subproblems.

struct RcgOptions {
  double armijo_initial_step = 1.0;
  double armijo_shrink = 0.5;   // in (0,1)
  double armijo_sigma = 1e-4;   // sufficient-increase coefficient, in (0,1)
  int max_backtracks = 50;
  double tolerance = 1e-4;      // stop when |f_{t+1} - f_t| falls below
  int max_iters = 500;
  bool pr_plus = true;          // clamp lambda at zero
  double grad_norm_tol = 0.0;   // optional extra stop; 0 disables
  // Start each line search from twice the previously accepted step (capped
  // at armijo_initial_step) instead of always from armijo_initial_step.
  bool warm_start_step = true;

  void validate() const {
    if (!(armijo_initial_step > 0.0) || !(armijo_shrink > 0.0) ||
        !(armijo_shrink < 1.0) || !(armijo_sigma > 0.0) ||
        !(armijo_sigma < 1.0) || max_backtracks < 1 || !(tolerance > 0.0) ||
        max_iters < 1 || grad_norm_tol < 0.0) {
      throw std::invalid_argument("RcgOptions: parameter out of range");
    }
  }
};

enum class RcgStop {
  kConverged,      // |f_{t+1} - f_t| < tolerance
  kGradNorm,       // Riemannian gradient norm under grad_norm_tol
  kZeroGradient,   // stationary start
  kIterationCap,
  kStagnated,      // line search exhausted its backtracks
};

struct RcgIterRecord {
  int iter;
  double objective;
  double grad_norm;
  double step;
  double lambda;
  int backtracks;
};

struct RcgTrace {
  std::vector<RcgIterRecord> records;
  RcgStop stop = RcgStop::kIterationCap;

  double final_objective() const { return records.back().objective; }
  double final_grad_norm() const { return records.back().grad_norm; }
  int iterations() const { return static_cast<int>(records.size()) - 1; }
  // Tabular export: iter, objective, grad_norm, step, lambda, backtracks.
  void write_table(std::ostream& os) const;
};

const char* to_string(RcgStop stop);

// lambda = <g_new, g_new - g_old_transported> / ||g_old_transported||^2,
// clamped at zero when pr_plus is set. A vanished old gradient signals a
// restart (lambda = 0).
template <class Tangent>
double polak_ribiere(const Tangent& g_new, const Tangent& g_old_transported,
                     bool pr_plus) {
  const double denom = la::norm2sq(g_old_transported);
  if (denom == 0.0) return 0.0;
  double lambda =
      (la::norm2sq(g_new) - la::dot_real(g_new, g_old_transported)) / denom;
  if (pr_plus && lambda < 0.0) lambda = 0.0;
  return lambda;
}

// d_new = g_new + lambda * P_point(d_old), reset to g_new whenever the
// result is not an ascent direction.
template <class Manifold>
typename Manifold::Tangent conjugate_direction(
    const Manifold& man, const typename Manifold::Point& point,
    const typename Manifold::Tangent& g_new,
    const typename Manifold::Tangent& d_old, double lambda) {
  if (lambda == 0.0) return g_new;
  typename Manifold::Tangent d = man.project(point, d_old);
  la::scale(cplx(lambda, 0.0), d);
  d = la::add(d, g_new);
  if (man.inner(d, g_new) <= 0.0) return g_new;
  return d;
}

template <class Manifold>
struct ArmijoResult {
  double step = 0.0;
  typename Manifold::Point point;
  double f_new = 0.0;
  int backtracks = 0;
  bool ok = false;
};

// Backtracking line search: largest tested step initial*shrink^m satisfying
// f(Ret(step*d)) >= f0 + sigma*step*<grad, d>. The directional slope must be
// positive (ascent); exhausting the budget reports ok = false and the caller
// stops the inner loop.
template <class Manifold, class F>
ArmijoResult<Manifold> armijo_search(const Manifold& man, F&& f,
                                     const typename Manifold::Point& point,
                                     double f0,
                                     const typename Manifold::Tangent& d,
                                     double slope, const RcgOptions& opts,
                                     double initial_step) {
  if (!(slope > 0.0)) {
    throw std::invalid_argument(
        "armijo_search: direction is not an ascent direction");
  }
  ArmijoResult<Manifold> res;
  double step = initial_step;
  for (int m = 0; m < opts.max_backtracks; ++m) {
    bool degenerate = false;
    typename Manifold::Point candidate;
    try {
      candidate = man.retract(point, d, step);
    } catch (const DegenerateRetraction&) {
      degenerate = true;
    }
    if (!degenerate) {
      const double f_new = f(candidate);
      if (f_new >= f0 + opts.armijo_sigma * step * slope) {
        res.step = step;
        res.point = std::move(candidate);
        res.f_new = f_new;
        res.backtracks = m;
        res.ok = true;
        return res;
      }
    }
    step *= opts.armijo_shrink;
  }
  res.backtracks = opts.max_backtracks;
  return res;
}

template <class Manifold>
struct RcgResult {
  typename Manifold::Point x;
  RcgTrace trace;
};

// Algorithm: project the Euclidean gradient (the Riemannian gradient), form
// the Polak-Ribiere conjugate direction with projection transport, take an
// Armijo step through the retraction, and stop on objective stagnation.
template <class Manifold, class F, class G>
RcgResult<Manifold> rcg_maximize(const Manifold& man, F&& f, G&& euclid_grad,
                                 typename Manifold::Point x0,
                                 const RcgOptions& opts) {
  opts.validate();

  RcgResult<Manifold> out;
  out.x = std::move(x0);
  double fx = f(out.x);
  typename Manifold::Tangent g = man.project(out.x, euclid_grad(out.x));
  double gnorm = man.norm(g);

  out.trace.records.push_back({0, fx, gnorm, 0.0, 0.0, 0});
  if (gnorm == 0.0) {
    out.trace.stop = RcgStop::kZeroGradient;
    return out;
  }
  if (opts.grad_norm_tol > 0.0 && gnorm < opts.grad_norm_tol) {
    out.trace.stop = RcgStop::kGradNorm;
    return out;
  }

  typename Manifold::Tangent d = g;
  double step_hint = opts.armijo_initial_step;
  out.trace.stop = RcgStop::kIterationCap;

  for (int t = 1; t <= opts.max_iters; ++t) {
    double slope = man.inner(g, d);
    if (!(slope > 0.0)) {
      d = g;  // defensive restart; the safeguard normally prevents this
      slope = gnorm * gnorm;
      if (!(slope > 0.0)) {
        out.trace.stop = RcgStop::kZeroGradient;
        break;
      }
    }

    const auto ar = armijo_search(man, f, out.x, fx, d, slope, opts, step_hint);
    if (!ar.ok) {
      out.trace.stop = RcgStop::kStagnated;
      break;
    }

    typename Manifold::Tangent g_new =
        man.project(ar.point, euclid_grad(ar.point));
    const double gnorm_new = man.norm(g_new);
    const typename Manifold::Tangent g_old_t = man.project(ar.point, g);
    const double lambda = polak_ribiere(g_new, g_old_t, opts.pr_plus);
    d = conjugate_direction(man, ar.point, g_new, d, lambda);

    const double f_prev = fx;
    out.x = ar.point;
    fx = ar.f_new;
    g = std::move(g_new);
    gnorm = gnorm_new;
    out.trace.records.push_back(
        {t, fx, gnorm, ar.step, lambda, ar.backtracks});

    if (opts.warm_start_step) {
      step_hint = std::min(opts.armijo_initial_step, 2.0 * ar.step);
    }
    if (std::abs(fx - f_prev) < opts.tolerance) {
      out.trace.stop = RcgStop::kConverged;
      break;
    }
    if (opts.grad_norm_tol > 0.0 && gnorm < opts.grad_norm_tol) {
      out.trace.stop = RcgStop::kGradNorm;
      break;
    }
  }
  return out;
}

}  // namespace irsopt

#endif  // IRSOPT_RCG_HPP_
