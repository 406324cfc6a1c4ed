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

#pragma once

// Data-parallel complex kernels used by the inner loops of the propagators.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant. The variant is chosen once at runtime from CPUID; setting the
// environment variable STARK_SIMD=scalar forces the reference path. All
// matrices are column-major (Eigen's default layout).

#include <complex>
#include <cstddef>
#include <string_view>

namespace stark::simd {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;

  // sum_i conj(a_i) * b_i
  Complex (*dotc)(const Complex* a, const Complex* b, std::size_t n);
  // sum_i |x_i|^2
  double (*norm2)(const Complex* x, std::size_t n);
  // y += alpha * x
  void (*axpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  // y = A x, A is rows x cols
  void (*gemv)(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y);
  // rho += weight * psi psi^dagger, rho is n x n
  void (*rank1_update)(double weight, const Complex* psi, std::size_t n, Complex* rho);
  // out = -i (H rho - rho H) + gamma (diag(rho) - rho) for tridiagonal H with
  // bands diag[n], upper[n-1] (H_{j,j+1}) and lower[n-1] (H_{j+1,j}).
  void (*dephasing_apply)(const Complex* diag, const Complex* upper, const Complex* lower,
                          double gamma, const Complex* rho, Complex* out, std::size_t n);
};

const KernelTable& scalar_kernels();

// Null when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

// The table selected for this process.
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace stark::simd
