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

#ifndef IRSOPT_KERNELS_HPP_
#define IRSOPT_KERNELS_HPP_

#include <complex>
#include <cstddef>

namespace irsopt::kernels {

using cplx = std::complex<double>;

// Flat complex-double array kernels. Arrays are interleaved (re, im) pairs,
// which is the standard std::complex<double> memory layout, so a pointer to
// the first element of a std::vector<cplx> can be handed straight in.
//
// Two implementations exist: a scalar reference and an AVX2+FMA variant.
// The active table is selected once at startup from CPU features; the
// IRSOPT_KERNELS environment variable ("scalar" or "avx2") overrides the
// choice. Both sides are exercised against each other in the test suite.
struct Ops {
  const char* name;

  // sum_i x[i] * y[i]
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // Re{ sum_i conj(x[i]) * y[i] }  (the embedded real inner product)
  double (*dot_real)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i |x[i]|^2
  double (*norm2sq)(const cplx* x, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // y[i] += a * conj(x[i])
  void (*axpyc)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // out[i] = x[i] * y[i]
  void (*hadamard)(const cplx* x, const cplx* y, cplx* out, std::size_t n);
  // out[i] = conj(x[i]) * y[i]
  void (*hadamard_conj)(const cplx* x, const cplx* y, cplx* out, std::size_t n);
  // x[i] *= a
  void (*scale)(cplx a, cplx* x, std::size_t n);
};

const Ops& scalar_ops();

// AVX2+FMA table, or nullptr when the build or the CPU does not support it.
const Ops* avx2_ops();

// The runtime-selected table (AVX2 when available unless overridden).
const Ops& active();

}  // namespace irsopt::kernels

#endif  // IRSOPT_KERNELS_HPP_
