// Copyright 2026 The starkprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma. Only reached after the dispatcher has confirmed
// CPU support.

#include <immintrin.h>

#include "stark/simd/kernels.hpp"

namespace stark::simd {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d bcast(Complex z) { return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag()); }

// a * b
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

// conj(a) * b
inline __m256d cmulc(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmsubadd_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

// -i * a
inline __m256d mul_minus_i(__m256d a) {
  const __m256d sw = _mm256_permute_pd(a, 0x5);
  return _mm256_mul_pd(sw, _mm256_setr_pd(1.0, -1.0, 1.0, -1.0));
}

inline Complex hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

Complex dotc(const Complex* a, const Complex* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmulc(load2(a + i), load2(b + i)));
    acc1 = _mm256_add_pd(acc1, cmulc(load2(a + i + 2), load2(b + i + 2)));
  }
  for (; i + 2 <= n; i += 2) acc0 = _mm256_add_pd(acc0, cmulc(load2(a + i), load2(b + i)));
  Complex s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const Complex* x, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d v = _mm256_loadu_pd(d + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  const Complex h = hsum(acc);
  double s = h.real() + h.imag();
  for (; i < m; ++i) s += d[i] * d[i];
  return s;
}

void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const __m256d va = bcast(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(va, load2(x + i))));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void gemv(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < cols; ++j) axpy(x[j], a + j * rows, y, rows);
}

void rank1_update(double weight, const Complex* psi, std::size_t n, Complex* rho) {
  for (std::size_t b = 0; b < n; ++b) axpy(weight * std::conj(psi[b]), psi, rho + b * n, n);
}

void dephasing_apply(const Complex* diag, const Complex* upper, const Complex* lower, double gamma,
                     const Complex* rho, Complex* out, std::size_t n) {
  const Complex mi{0.0, -1.0};
  const __m256d vgamma = _mm256_set1_pd(gamma);
  for (std::size_t b = 0; b < n; ++b) {
    const Complex* col = rho + b * n;
    const Complex* left = b > 0 ? rho + (b - 1) * n : nullptr;
    const Complex* right = b + 1 < n ? rho + (b + 1) * n : nullptr;
    Complex* o = out + b * n;
    const Complex ub = left ? upper[b - 1] : Complex{};
    const Complex lb = right ? lower[b] : Complex{};

    auto one = [&](std::size_t a) {
      Complex hr = diag[a] * col[a];
      if (a + 1 < n) hr += upper[a] * col[a + 1];
      if (a > 0) hr += lower[a - 1] * col[a - 1];
      Complex rh = col[a] * diag[b];
      if (left) rh += left[a] * ub;
      if (right) rh += right[a] * lb;
      o[a] = mi * (hr - rh) - gamma * col[a];
    };

    if (n < 4) {
      for (std::size_t a = 0; a < n; ++a) one(a);
    } else {
      one(0);
      const __m256d vdb = bcast(diag[b]);
      const __m256d vub = bcast(ub);
      const __m256d vlb = bcast(lb);
      std::size_t a = 1;
      for (; a + 2 <= n - 1; a += 2) {
        const __m256d c = load2(col + a);
        __m256d hr = cmul(load2(diag + a), c);
        hr = _mm256_add_pd(hr, cmul(load2(upper + a), load2(col + a + 1)));
        hr = _mm256_add_pd(hr, cmul(load2(lower + a - 1), load2(col + a - 1)));
        __m256d rh = cmul(c, vdb);
        if (left) rh = _mm256_add_pd(rh, cmul(load2(left + a), vub));
        if (right) rh = _mm256_add_pd(rh, cmul(load2(right + a), vlb));
        const __m256d v = _mm256_fnmadd_pd(vgamma, c, mul_minus_i(_mm256_sub_pd(hr, rh)));
        store2(o + a, v);
      }
      for (; a < n; ++a) one(a);
    }
    o[b] += gamma * col[b];
  }
}

constexpr KernelTable kAvx2{Isa::Avx2, dotc, norm2, axpy, gemv, rank1_update, dephasing_apply};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2; }

}  // namespace stark::simd
