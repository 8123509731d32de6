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

#include "irsopt/manifold.hpp"

#include <cmath>

namespace irsopt {

CVec CircleManifold::project(const CVec& theta, const CVec& g) const {
  if (theta.size() != g.size() || theta.size() != dim) {
    throw std::invalid_argument("CircleManifold::project: dimension mismatch");
  }
  CVec out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double radial = g[i].real() * theta[i].real() +
                          g[i].imag() * theta[i].imag();
    out[i] = g[i] - radial * theta[i];
  }
  return out;
}

CVec CircleManifold::retract(const CVec& theta, const CVec& d,
                             double step) const {
  if (theta.size() != d.size() || theta.size() != dim) {
    throw std::invalid_argument("CircleManifold::retract: dimension mismatch");
  }
  CVec out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const cplx moved = theta[i] + step * d[i];
    const double mag = std::abs(moved);
    if (mag == 0.0) {
      throw DegenerateRetraction("circle retraction hit a zero entry");
    }
    out[i] = moved / mag;
  }
  return out;
}

bool CircleManifold::is_feasible(const CVec& theta, double tol) const {
  if (theta.size() != dim) return false;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (std::abs(std::abs(theta[i]) - 1.0) > tol) return false;
  }
  return true;
}

CMat ObliqueManifold::project(const CMat& w, const CMat& g) const {
  if (w.rows() != g.rows() || w.cols() != g.cols() || w.rows() != rows ||
      w.cols() != cols) {
    throw std::invalid_argument("ObliqueManifold::project: shape mismatch");
  }
  CMat out = g;
  for (std::size_t k = 0; k < w.rows(); ++k) {
    // diag entry of Re{W g^H} for this row
    const double radial =
        kernels::active().dot_real(w.row(k), g.row(k), w.cols());
    kernels::active().axpy(-radial, w.row(k), out.row(k), w.cols());
  }
  return out;
}

CMat ObliqueManifold::retract(const CMat& w, const CMat& d,
                              double step) const {
  if (w.rows() != d.rows() || w.cols() != d.cols() || w.rows() != rows ||
      w.cols() != cols) {
    throw std::invalid_argument("ObliqueManifold::retract: shape mismatch");
  }
  CMat out(w.rows(), w.cols());
  for (std::size_t k = 0; k < w.rows(); ++k) {
    cplx* dst = out.row(k);
    const cplx* wp = w.row(k);
    const cplx* dp = d.row(k);
    double nrm2 = 0.0;
    for (std::size_t c = 0; c < w.cols(); ++c) {
      dst[c] = wp[c] + step * dp[c];
      nrm2 += std::norm(dst[c]);
    }
    if (nrm2 == 0.0) {
      throw DegenerateRetraction("oblique retraction hit a zero row");
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (std::size_t c = 0; c < w.cols(); ++c) dst[c] *= inv;
  }
  return out;
}

bool ObliqueManifold::is_feasible(const CMat& w, double tol) const {
  if (w.rows() != rows || w.cols() != cols) return false;
  for (std::size_t k = 0; k < w.rows(); ++k) {
    const double nrm =
        std::sqrt(kernels::active().norm2sq(w.row(k), w.cols()));
    if (std::abs(nrm - 1.0) > tol) return false;
  }
  return true;
}

CVec riemannian_grad(const CircleManifold& man, const CVec& point,
                     const CVec& euclidean_grad) {
  return man.project(point, euclidean_grad);
}

CMat riemannian_grad(const ObliqueManifold& man, const CMat& point,
                     const CMat& euclidean_grad) {
  return man.project(point, euclidean_grad);
}

}  // namespace irsopt
