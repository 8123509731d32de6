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

#ifndef IRSOPT_LINALG_HPP_
#define IRSOPT_LINALG_HPP_

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "irsopt/kernels.hpp"

namespace irsopt {

using cplx = std::complex<double>;

// Dense complex vector / row-major matrix. All arithmetic that touches every
// element goes through the kernel layer so it picks up the SIMD backend.

class CVec {
 public:
  CVec() = default;
  explicit CVec(std::size_t n, cplx fill = {}) : v_(n, fill) {}
  explicit CVec(std::vector<cplx> v) : v_(std::move(v)) {}

  std::size_t size() const { return v_.size(); }
  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }
  const std::vector<cplx>& raw() const { return v_; }

  bool operator==(const CVec&) const = default;

 private:
  std::vector<cplx> v_;
};

class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols, cplx fill = {})
      : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return v_.size(); }
  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  cplx* row(std::size_t r) { return v_.data() + r * cols_; }
  const cplx* row(std::size_t r) const { return v_.data() + r * cols_; }
  cplx& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return v_[r * cols_ + c];
  }

  bool operator==(const CMat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> v_;
};

namespace la {

inline cplx dotu(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dotu: size mismatch");
  return kernels::active().dotu(x.data(), y.data(), x.size());
}

// sum conj(x_i) y_i
inline cplx dotc(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dotc: size mismatch");
  return kernels::active().dotc(x.data(), y.data(), x.size());
}

inline double norm2sq(const CVec& x) {
  return kernels::active().norm2sq(x.data(), x.size());
}
inline double norm2sq(const CMat& x) {
  return kernels::active().norm2sq(x.data(), x.size());
}
inline double norm(const CVec& x) { return std::sqrt(norm2sq(x)); }
inline double norm(const CMat& x) { return std::sqrt(norm2sq(x)); }

// Re<x,y> over flattened storage; the embedded manifold metric.
inline double dot_real(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("dot_real: size mismatch");
  }
  return kernels::active().dot_real(x.data(), y.data(), x.size());
}
inline double dot_real(const CMat& x, const CMat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("dot_real: shape mismatch");
  }
  return kernels::active().dot_real(x.data(), y.data(), x.size());
}

inline void axpy(cplx a, const CVec& x, CVec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  kernels::active().axpy(a, x.data(), y.data(), x.size());
}

inline void scale(cplx a, CVec& x) {
  kernels::active().scale(a, x.data(), x.size());
}
inline void scale(cplx a, CMat& x) {
  kernels::active().scale(a, x.data(), x.size());
}

// y = A x
inline CVec mat_vec(const CMat& a, const CVec& x) {
  if (a.cols() != x.size()) {
    throw std::invalid_argument("mat_vec: shape mismatch");
  }
  CVec y(a.rows());
  const auto& k = kernels::active();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    y[r] = k.dotu(a.row(r), x.data(), a.cols());
  }
  return y;
}

// y = A^T x   (accumulated row by row)
inline CVec matT_vec(const CMat& a, const CVec& x) {
  if (a.rows() != x.size()) {
    throw std::invalid_argument("matT_vec: shape mismatch");
  }
  CVec y(a.cols());
  const auto& k = kernels::active();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    k.axpy(x[r], a.row(r), y.data(), a.cols());
  }
  return y;
}

// y = A^H x
inline CVec matH_vec(const CMat& a, const CVec& x) {
  if (a.rows() != x.size()) {
    throw std::invalid_argument("matH_vec: shape mismatch");
  }
  CVec y(a.cols());
  const auto& k = kernels::active();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    k.axpyc(x[r], a.row(r), y.data(), a.cols());
  }
  return y;
}

inline CVec add(const CVec& x, const CVec& y) {
  CVec z = x;
  axpy(cplx(1.0, 0.0), y, z);
  return z;
}

inline CVec sub(const CVec& x, const CVec& y) {
  CVec z = x;
  axpy(cplx(-1.0, 0.0), y, z);
  return z;
}

inline CMat add(const CMat& x, const CMat& y) {
  CMat z = x;
  kernels::active().axpy({1.0, 0.0}, y.data(), z.data(), z.size());
  return z;
}

inline CMat sub(const CMat& x, const CMat& y) {
  CMat z = x;
  kernels::active().axpy({-1.0, 0.0}, y.data(), z.data(), z.size());
  return z;
}

}  // namespace la

}  // namespace irsopt

#endif  // IRSOPT_LINALG_HPP_
