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

#include "irsopt/kernels.hpp"

// AVX2+FMA variants. This translation unit is compiled with -mavx2 -mfma;
// nothing here may run unless avx2_ops() reported a capable CPU.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace irsopt::kernels {
namespace {

// One __m256d holds two interleaved complex doubles [a0 b0 a1 b1].

inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d xr = _mm256_movedup_pd(x);            // [a0 a0 a1 a1]
  const __m256d xi = _mm256_unpackhi_pd(x, x);        // [b0 b0 b1 b1]
  const __m256d ys = _mm256_shuffle_pd(y, y, 0x5);    // [d0 c0 d1 c1]
  // even lanes: a*c - b*d, odd lanes: a*d + b*c
  return _mm256_fmaddsub_pd(xr, y, _mm256_mul_pd(xi, ys));
}

// conj(x) * y
inline __m256d cmulc(__m256d x, __m256d y) {
  const __m256d xr = _mm256_movedup_pd(x);
  const __m256d xi = _mm256_unpackhi_pd(x, x);
  const __m256d ys = _mm256_shuffle_pd(y, y, 0x5);
  // even lanes: a*c + b*d, odd lanes: a*d - b*c
  return _mm256_fmsubadd_pd(xr, y, _mm256_mul_pd(xi, ys));
}

inline cplx reduce_pair(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

inline double reduce_all(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(xp + 2 * i),
                                    _mm256_loadu_pd(yp + 2 * i)));
    acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(xp + 2 * i + 4),
                                    _mm256_loadu_pd(yp + 2 * i + 4)));
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(xp + 2 * i),
                                    _mm256_loadu_pd(yp + 2 * i)));
  }
  cplx r = reduce_pair(_mm256_add_pd(acc0, acc1));
  if (i < n) r += scalar_ops().dotu(x + i, y + i, n - i);
  return r;
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmulc(_mm256_loadu_pd(xp + 2 * i),
                                     _mm256_loadu_pd(yp + 2 * i)));
    acc1 = _mm256_add_pd(acc1, cmulc(_mm256_loadu_pd(xp + 2 * i + 4),
                                     _mm256_loadu_pd(yp + 2 * i + 4)));
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = _mm256_add_pd(acc0, cmulc(_mm256_loadu_pd(xp + 2 * i),
                                     _mm256_loadu_pd(yp + 2 * i)));
  }
  cplx r = reduce_pair(_mm256_add_pd(acc0, acc1));
  if (i < n) r += scalar_ops().dotc(x + i, y + i, n - i);
  return r;
}

double dot_real_avx2(const cplx* x, const cplx* y, std::size_t n) {
  // Re<x,y> is the plain dot product of the interleaved double arrays.
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(xp + i), _mm256_loadu_pd(yp + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(xp + i + 4),
                           _mm256_loadu_pd(yp + i + 4), acc1);
  }
  for (; i + 4 <= m; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(xp + i), _mm256_loadu_pd(yp + i),
                           acc0);
  }
  double r = reduce_all(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) r += xp[i] * yp[i];
  return r;
}

double norm2sq_avx2(const cplx* x, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(xp + i);
    const __m256d v1 = _mm256_loadu_pd(xp + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(xp + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double r = reduce_all(_mm256_add_pd(acc0, acc1));
  for (; i < m; ++i) r += xp[i] * xp[i];
  return r;
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d r = _mm256_add_pd(
        _mm256_loadu_pd(yp + 2 * i), cmul(av, _mm256_loadu_pd(xp + 2 * i)));
    _mm256_storeu_pd(yp + 2 * i, r);
  }
  if (i < n) scalar_ops().axpy(a, x + i, y + i, n - i);
}

void axpyc_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // a * conj(x) == conj(x) * a
    const __m256d r = _mm256_add_pd(
        _mm256_loadu_pd(yp + 2 * i), cmulc(_mm256_loadu_pd(xp + 2 * i), av));
    _mm256_storeu_pd(yp + 2 * i, r);
  }
  if (i < n) scalar_ops().axpyc(a, x + i, y + i, n - i);
}

void hadamard_avx2(const cplx* x, const cplx* y, cplx* out, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  double* op = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(
        op + 2 * i,
        cmul(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
  }
  if (i < n) scalar_ops().hadamard(x + i, y + i, out + i, n - i);
}

void hadamard_conj_avx2(const cplx* x, const cplx* y, cplx* out,
                        std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  double* op = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(
        op + 2 * i,
        cmulc(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
  }
  if (i < n) scalar_ops().hadamard_conj(x + i, y + i, out + i, n - i);
}

void scale_avx2(cplx a, cplx* x, std::size_t n) {
  double* xp = reinterpret_cast<double*>(x);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(xp + 2 * i, cmul(av, _mm256_loadu_pd(xp + 2 * i)));
  }
  if (i < n) scalar_ops().scale(a, x + i, n - i);
}

}  // namespace

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
    return nullptr;
  }
  static const Ops ops = {
      "avx2",        dotu_avx2,     dotc_avx2,
      dot_real_avx2, norm2sq_avx2,  axpy_avx2,
      axpyc_avx2,    hadamard_avx2, hadamard_conj_avx2,
      scale_avx2,
  };
  return &ops;
}

}  // namespace irsopt::kernels

#else  // not x86-64

namespace irsopt::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace irsopt::kernels

#endif
