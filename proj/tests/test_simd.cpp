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

#include <cstdlib>
#include <random>
#include <vector>

#include "doctest.h"
#include "stark/simd/kernels.hpp"

using stark::simd::Complex;
using stark::simd::KernelTable;

namespace {

std::vector<Complex> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(d(rng), d(rng));
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// odd sizes exercise the remainder loops
const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 17, 33, 64, 101};

void check_against_reference(const KernelTable& k) {
  const KernelTable& ref = stark::simd::scalar_kernels();
  std::mt19937_64 rng(17);
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto a = random_vec(n, rng);
    const auto b = random_vec(n, rng);
    const double scale = static_cast<double>(n);
    CHECK(std::abs(k.dotc(a.data(), b.data(), n) - ref.dotc(a.data(), b.data(), n)) < 1e-13 * scale);
    CHECK(std::abs(k.norm2(a.data(), n) - ref.norm2(a.data(), n)) < 1e-13 * scale);

    auto y1 = b, y2 = b;
    k.axpy(Complex(0.3, -1.1), a.data(), y1.data(), n);
    ref.axpy(Complex(0.3, -1.1), a.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) < 1e-14);

    for (std::size_t rows : {n, n + 3}) {
      const auto m = random_vec(rows * n, rng);
      std::vector<Complex> g1(rows), g2(rows);
      k.gemv(m.data(), rows, n, a.data(), g1.data());
      ref.gemv(m.data(), rows, n, a.data(), g2.data());
      CHECK(max_diff(g1, g2) < 1e-13 * scale);
    }

    auto r1 = random_vec(n * n, rng);
    auto r2 = r1;
    k.rank1_update(0.7, a.data(), n, r1.data());
    ref.rank1_update(0.7, a.data(), n, r2.data());
    CHECK(max_diff(r1, r2) < 1e-14);

    const auto diag = random_vec(n, rng);
    const auto up = random_vec(n, rng);
    const auto lo = random_vec(n, rng);
    const auto rho = random_vec(n * n, rng);
    std::vector<Complex> o1(n * n), o2(n * n);
    k.dephasing_apply(diag.data(), up.data(), lo.data(), 0.37, rho.data(), o1.data(), n);
    ref.dephasing_apply(diag.data(), up.data(), lo.data(), 0.37, rho.data(), o2.data(), n);
    CHECK(max_diff(o1, o2) < 1e-13);
  }
}

}  // namespace

TEST_CASE("scalar kernels on closed forms") {
  const KernelTable& k = stark::simd::scalar_kernels();
  const std::vector<Complex> a{{1, 1}, {0, 2}, {3, 0}};
  const std::vector<Complex> b{{1, 0}, {1, 0}, {1, 0}};
  CHECK(k.dotc(a.data(), b.data(), 3) == Complex(4, -3));
  CHECK(k.norm2(a.data(), 3) == 15.0);
  // 2x2 dephasing of a pure coherence with H = 0: out = -gamma rho off the diagonal
  const std::vector<Complex> z{{0, 0}, {0, 0}};
  const std::vector<Complex> zero1{{0, 0}};
  const std::vector<Complex> rho{{0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}};
  std::vector<Complex> out(4);
  k.dephasing_apply(z.data(), zero1.data(), zero1.data(), 2.0, rho.data(), out.data(), 2);
  CHECK(out[0] == Complex(0, 0));
  CHECK(out[1] == Complex(-1, 0));
  CHECK(out[2] == Complex(-1, 0));
  CHECK(out[3] == Complex(0, 0));
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const KernelTable* avx = stark::simd::avx2_kernels();
  if (avx == nullptr || !stark::simd::cpu_supports_avx2()) {
    MESSAGE("AVX2 path unavailable on this build or CPU; skipping");
    return;
  }
  CHECK(avx->isa == stark::simd::Isa::Avx2);
  check_against_reference(*avx);
}

TEST_CASE("active table is one of the known variants") {
  const auto& a = stark::simd::active();
  const char* env = std::getenv("STARK_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") CHECK(a.isa == stark::simd::Isa::Scalar);
  CHECK((stark::simd::isa_name(a.isa) == "scalar" || stark::simd::isa_name(a.isa) == "avx2"));
  check_against_reference(a);
}
