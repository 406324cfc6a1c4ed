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

#include "stark/simd/kernels.hpp"

namespace stark::simd {
namespace {

Complex dotc(const Complex* a, const Complex* b, std::size_t n) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const Complex* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
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
  for (std::size_t b = 0; b < n; ++b) {
    const Complex* col = rho + b * n;
    const Complex* left = b > 0 ? rho + (b - 1) * n : nullptr;
    const Complex* right = b + 1 < n ? rho + (b + 1) * n : nullptr;
    Complex* o = out + b * n;
    for (std::size_t a = 0; a < n; ++a) {
      // (H rho)_ab
      Complex hr = diag[a] * col[a];
      if (a + 1 < n) hr += upper[a] * col[a + 1];
      if (a > 0) hr += lower[a - 1] * col[a - 1];
      // (rho H)_ab
      Complex rh = col[a] * diag[b];
      if (left) rh += left[a] * upper[b - 1];
      if (right) rh += right[a] * lower[b];
      Complex v = mi * (hr - rh);
      if (a != b) v -= gamma * col[a];
      o[a] = v;
    }
  }
}

constexpr KernelTable kScalar{Isa::Scalar, dotc, norm2, axpy, gemv, rank1_update, dephasing_apply};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace stark::simd
