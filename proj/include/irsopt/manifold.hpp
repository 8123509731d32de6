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

#ifndef IRSOPT_MANIFOLD_HPP_
#define IRSOPT_MANIFOLD_HPP_

#include <stdexcept>
#include <variant>

#include "irsopt/linalg.hpp"

namespace irsopt {

// Raised when a retraction would divide by zero (a step that lands exactly
// on the origin of an entry/row). The line search shrinks the step and
// retries instead of perturbing silently.
class DegenerateRetraction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complex circle manifold {theta : |theta_i| = 1}, the feasible set of the
// passive beamformer. Tangent vectors satisfy Re(d_i conj(theta_i)) = 0;
// the metric is the embedded real inner product.
struct CircleManifold {
  using Point = CVec;
  using Tangent = CVec;

  std::size_t dim = 0;

  // P_theta(g) = g - Re[g o conj(theta)] o theta
  CVec project(const CVec& theta, const CVec& g) const;
  // Entrywise (theta_i + step*d_i) / |theta_i + step*d_i|.
  CVec retract(const CVec& theta, const CVec& d, double step) const;
  double inner(const CVec& u, const CVec& v) const { return la::dot_real(u, v); }
  double norm(const CVec& u) const { return la::norm(u); }
  bool is_feasible(const CVec& theta, double tol) const;
};

// Oblique manifold {W in C^{KxN} : rows have unit norm}, the feasible set of
// the active beamformer. Tangent rows are orthogonal (in the real sense) to
// the corresponding point rows.
struct ObliqueManifold {
  using Point = CMat;
  using Tangent = CMat;

  std::size_t rows = 0;
  std::size_t cols = 0;

  // P_W(g) = g - (I o Re{W g^H}) W
  CMat project(const CMat& w, const CMat& g) const;
  // Row-wise (w_k + step*d_k) / ||w_k + step*d_k||.
  CMat retract(const CMat& w, const CMat& d, double step) const;
  double inner(const CMat& u, const CMat& v) const { return la::dot_real(u, v); }
  double norm(const CMat& u) const { return la::norm(u); }
  bool is_feasible(const CMat& w, double tol) const;
};

using ManifoldKind = std::variant<CircleManifold, ObliqueManifold>;

// The Riemannian gradient is the tangent projection of the Euclidean one.
CVec riemannian_grad(const CircleManifold& man, const CVec& point,
                     const CVec& euclidean_grad);
CMat riemannian_grad(const ObliqueManifold& man, const CMat& point,
                     const CMat& euclidean_grad);

}  // namespace irsopt

#endif  // IRSOPT_MANIFOLD_HPP_
