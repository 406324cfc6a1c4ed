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

#include <cmath>
#include <random>

#include "doctest.h"
#include "stark/errors.hpp"
#include "stark/model.hpp"
#include "stark/spectral.hpp"
#include "test_support.hpp"

using namespace stark;
using stark::testing::max_abs;

namespace {

// det(H - x I) for a real symmetric tridiagonal matrix by the three-term
// recurrence; its sign changes count eigenvalues below x (Sturm sequence).
int count_below(const std::vector<double>& d, double off, double x) {
  int count = 0;
  double q = d[0] - x;
  if (q < 0) ++count;
  for (std::size_t k = 1; k < d.size(); ++k) {
    if (q == 0.0) q = 1e-300;
    q = (d[k] - x) - off * off / q;
    if (q < 0) ++count;
  }
  return count;
}

double bisect_eigenvalue(const std::vector<double>& d, double off, int index) {
  double lo = -10.0, hi = 10.0;
  for (double v : d) {
    lo = std::min(lo, v - 2.0 * std::abs(off) - 1.0);
    hi = std::max(hi, v + 2.0 * std::abs(off) + 1.0);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(d, off, mid) > index) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("build_stark: two-site field-free hopping") {
  const auto H = model::build_stark({2, 1.0, 0.0, 0.0});
  CHECK(H.hermitian);
  CMatrix expect(2, 2);
  expect << 0, 1, 1, 0;
  CHECK(max_abs(H.m - expect) == 0.0);
}

TEST_CASE("build_stark: L=3, h=1 has diagonal 1,2,3") {
  const auto H = model::build_stark({3, 1.0, 1.0, 0.0});
  for (int j = 0; j < 3; ++j) CHECK(H.m(j, j) == Complex(j + 1.0, 0.0));
  CHECK(H.m(0, 1) == Complex(1.0));
  CHECK(H.m(1, 2) == Complex(1.0));
  CHECK(H.m(0, 2) == Complex(0.0));
}

TEST_CASE("build_stark: eigenvalues against Sturm bisection") {
  SUBCASE("L=3 characteristic polynomial roots") {
    const LatticeSpec s{3, 1.0, 1.0, 0.0};
    const auto e = spectral::eig_hermitian(model::build_stark(s));
    // det(H - x) = (1-x)(2-x)(3-x) - (1-x) - (3-x) has roots 2 and 2 +- sqrt(3).
    CHECK(e.values(0) == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-13));
    CHECK(e.values(1) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(e.values(2) == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-13));
  }
  SUBCASE("L=40, h=0.05") {
    const LatticeSpec s{40, 1.0, 0.05, 0.0};
    std::vector<double> d(40);
    for (int j = 0; j < 40; ++j) d[j] = 0.05 * (j + 1);
    const auto e = spectral::eig_hermitian(model::build_stark(s));
    for (int k : {0, 1, 19, 39}) CHECK(std::abs(e.values(k) - bisect_eigenvalue(d, 1.0, k)) < 1e-10);
    Eigen::ComplexEigenSolver<CMatrix> general(model::build_stark(s).m);
    double lowest = general.eigenvalues().real().minCoeff();
    CHECK(std::abs(lowest - e.values(0)) < 1e-10);
  }
}

TEST_CASE("LatticeSpec validation") {
  CHECK_THROWS_AS(model::build_stark({1, 1.0, 0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(model::build_stark({4, 0.0, 0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(model::build_stark({4, 1.0, -0.1, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(model::build_stark({4, 1.0, 0.1, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(model::build_stark({4, 1.0, NAN, 0.0}), InvalidArgument);
}

TEST_CASE("build_dephasing_ops") {
  const auto ops = model::build_dephasing_ops({2, 1.0, 0.0, 0.1});
  REQUIRE(ops.size() == 2);
  CHECK(ops[0].m(0, 0) == Complex(1.0));
  CHECK(ops[0].m(1, 1) == Complex(0.0));
  CHECK(ops[1].m(1, 1) == Complex(1.0));
  const auto many = model::build_dephasing_ops({7, 1.0, 0.3, 0.1});
  CMatrix sum = CMatrix::Zero(7, 7);
  for (const auto& n : many) {
    CHECK(max_abs(n.m * n.m - n.m) == 0.0);
    CHECK(max_abs(n.m.adjoint() - n.m) == 0.0);
    sum += n.m;
  }
  CHECK(max_abs(sum - CMatrix::Identity(7, 7)) == 0.0);
}

TEST_CASE("build_effective_dephasing") {
  const LatticeSpec s0{6, 1.0, 0.2, 0.0};
  const auto H0 = model::build_effective_dephasing(s0);
  CHECK(H0.hermitian);
  CHECK(max_abs(H0.m - model::build_stark(s0).m) == 0.0);

  const auto H = model::build_effective_dephasing({2, 1.0, 0.0, 0.1});
  CHECK_FALSE(H.hermitian);
  CMatrix expect(2, 2);
  expect << Complex(0, -0.05), 1, 1, Complex(0, -0.05);
  CHECK(max_abs(H.m - expect) < 1e-15);

  const LatticeSpec s{8, 1.0, 0.3, 0.2};
  const auto stark = spectral::eig_hermitian(model::build_stark(s));
  const auto eff = spectral::eig_biorthogonal(model::build_effective_dephasing(s));
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(eff.values(k) - Complex(stark.values(k), -0.1)) < 1e-10);
  }
}

TEST_CASE("build_hatano_nelson") {
  const LatticeSpec s0{5, 1.0, 0.2, 0.0};
  CHECK(max_abs(model::build_hatano_nelson(s0).m - model::build_stark(s0).m) == 0.0);

  const double mu = model::nonreciprocity(0.05);
  CHECK(mu == doctest::Approx(std::asinh(0.05)).epsilon(1e-15));
  const auto H = model::build_hatano_nelson({4, 1.0, 0.0, 0.05});
  CHECK(std::abs(H.m(0, 1) * H.m(1, 0) - Complex(1.0)) < 1e-15);
  CHECK(H.m(0, 1).real() > H.m(1, 0).real());

  // Diagonal gauge S = diag(e^{-mu j}) maps Hatano-Nelson to the Hermitian chain.
  const LatticeSpec s{3, 1.0, 0.0, 0.05};
  const auto hn = model::build_hatano_nelson(s);
  CMatrix S = CMatrix::Zero(3, 3), Sinv = CMatrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) {
    S(j, j) = std::exp(-mu * (j + 1));
    Sinv(j, j) = 1.0 / S(j, j);
  }
  const CMatrix gauged = Sinv * hn.m * S;
  CHECK(max_abs(gauged - model::build_stark(s).m) < 1e-14);
  Eigen::ComplexEigenSolver<CMatrix> ces(hn.m);
  std::vector<double> ev;
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(ces.eigenvalues()(k).imag()) < 1e-12);
    ev.push_back(ces.eigenvalues()(k).real());
  }
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(ev[1]) < 1e-12);
  CHECK(ev[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("Hatano-Nelson spectrum is real with open boundaries") {
  for (int L : {10, 50, 200}) {
    for (double g : {0.05, 0.3, 1.0}) {
      const LatticeSpec s{L, 1.0, 0.01, g};
      const auto hn = model::build_hatano_nelson(s);
      // The gauge-symmetrized matrix is exactly real symmetric, so its
      // spectrum, shared with H_HN, is real.
      const double mu = model::nonreciprocity(g);
      CMatrix gauged = hn.m;
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) gauged(i, j) *= std::exp(mu * (i - j));
      CHECK(max_abs(gauged - model::build_stark(s).m) < 1e-12);
      if (L <= 50 && g <= 0.3) {
        Eigen::ComplexEigenSolver<CMatrix> ces(hn.m);
        CHECK(ces.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
}

TEST_CASE("build_unidirectional") {
  const auto H = model::build_unidirectional({2, 1.0, 1.0, 0.0});
  CMatrix expect(2, 2);
  expect << 1, 1, 0, 2;
  CHECK(max_abs(H.m - expect) == 0.0);
  CHECK_FALSE(H.hermitian);

  const auto H5 = model::build_unidirectional({5, 1.0, 0.7, 0.0});
  Eigen::ComplexEigenSolver<CMatrix> ces(H5.m);
  std::vector<double> ev;
  for (int k = 0; k < 5; ++k) ev.push_back(ces.eigenvalues()(k).real());
  std::sort(ev.begin(), ev.end());
  for (int k = 0; k < 5; ++k) CHECK(ev[k] == doctest::Approx(0.7 * (k + 1)).epsilon(1e-12));

  // h = 0: nilpotent shift, rank L-1, so one eigenvector only.
  const auto N = model::build_unidirectional({6, 1.0, 0.0, 0.0});
  Eigen::FullPivLU<CMatrix> lu(N.m);
  CHECK(lu.rank() == 5);
  CMatrix p = N.m;
  for (int k = 1; k < 6; ++k) p = p * N.m;
  CHECK(max_abs(p) == 0.0);
}

TEST_CASE("decompose_hermitian_antihermitian") {
  SUBCASE("Hermitian input") {
    const auto d = model::decompose_hermitian_antihermitian(model::build_stark({6, 1.0, 0.4, 0.0}));
    CHECK(max_abs(d.anti_hermitian.m) == 0.0);
    CHECK(d.gamma_scale == 1.0);
  }
  SUBCASE("effective dephasing") {
    const LatticeSpec s{5, 1.0, 0.3, 0.1};
    const auto d = model::decompose_hermitian_antihermitian(model::build_effective_dephasing(s), 0.1);
    CHECK(max_abs(d.hermitian.m - model::build_stark(s).m) < 1e-15);
    CHECK(max_abs(0.1 * d.anti_hermitian.m - 0.05 * CMatrix::Identity(5, 5)) < 1e-15);
  }
  SUBCASE("Hatano-Nelson couplings") {
    const double g = 0.05;
    const auto d = model::decompose_hermitian_antihermitian(model::build_hatano_nelson({6, 1.0, 0.0, g}), g);
    const double mu = model::nonreciprocity(g);
    CHECK(std::abs(d.hermitian.m(0, 1) - Complex(std::cosh(mu))) < 1e-14);
    CHECK(std::abs(d.hermitian.m(1, 0) - Complex(std::cosh(mu))) < 1e-14);
    CHECK(std::abs(d.anti_hermitian.m(0, 1) - Complex(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(d.anti_hermitian.m(1, 0) - Complex(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(d.anti_hermitian.m(2, 2)) == 0.0);
  }
  SUBCASE("recomposition on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix a = stark::testing::random_matrix(6, rng);
      const double g = 0.01 + 0.3 * trial;
      const auto d = model::decompose_hermitian_antihermitian({a, false}, g);
      CHECK(max_abs(d.hermitian.m - d.hermitian.m.adjoint()) == 0.0);
      CHECK(max_abs(d.anti_hermitian.m - d.anti_hermitian.m.adjoint()) == 0.0);
      CHECK(max_abs(d.hermitian.m - kI * g * d.anti_hermitian.m - a) < 1e-14 * std::max(1.0, max_abs(a)));
    }
  }
}

TEST_CASE("constant shift changes eigenvalues only") {
  const LatticeSpec s{10, 1.0, 0.2, 0.0};
  const auto H = model::build_stark(s);
  const double c = 3.7;
  const OperatorMatrix Hc{H.m + c * CMatrix::Identity(10, 10), true};
  const auto a = spectral::eig_hermitian(H);
  const auto b = spectral::eig_hermitian(Hc);
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(b.values(k) - a.values(k) - c) < 1e-10);
    CHECK(std::abs(std::abs(a.vectors.col(k).dot(b.vectors.col(k))) - 1.0) < 1e-10);
  }
  const auto hn = model::build_hatano_nelson({10, 1.0, 0.2, 0.1});
  const auto x = spectral::eig_biorthogonal(hn);
  const auto y = spectral::eig_biorthogonal({hn.m + c * CMatrix::Identity(10, 10), false});
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(y.values(k) - x.values(k) - c) < 1e-10);
    CHECK(std::abs(std::abs(x.normalized_right(k).dot(y.normalized_right(k))) - 1.0) < 1e-10);
  }
}

TEST_CASE("tridiagonal_bands") {
  const auto H = model::build_hatano_nelson({5, 1.0, 0.3, 0.2});
  const auto t = model::tridiagonal_bands(H.m);
  CHECK(t.diag.size() == 5);
  CHECK(t.upper[0] == H.m(0, 1));
  CHECK(t.lower[0] == H.m(1, 0));
  CMatrix full = CMatrix::Ones(3, 3);
  CHECK_THROWS_AS(model::tridiagonal_bands(full), InvalidArgument);
}
