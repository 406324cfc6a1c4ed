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
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "stark/errors.hpp"
#include "stark/expm.hpp"
#include "stark/model.hpp"
#include "stark/spectral.hpp"
#include "test_support.hpp"

using namespace stark;
using stark::testing::max_abs;

namespace {

// e^{A t} for Hermitian or anti-Hermitian-times-i A through a normal
// eigendecomposition: A = i K with K Hermitian.
CMatrix exp_via_eigh(const CMatrix& K, Complex scale) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(K);
  const CVector d = (scale * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("eig_hermitian examples") {
  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  auto e = spectral::eig_hermitian({x, true});
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));

  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  e = spectral::eig_hermitian({d, true});
  for (int k = 0; k < 3; ++k) CHECK(e.values(k) == doctest::Approx(k + 1.0));
  CHECK(max_abs(e.vectors.cwiseAbs().cast<Complex>() - CMatrix::Identity(3, 3)) < 1e-15);

  CHECK_THROWS_AS(spectral::eig_hermitian({x, false}), InvalidArgument);
}

TEST_CASE("eig_hermitian: Wannier-Stark ladder") {
  const LatticeSpec s{10, 1.0, 4.0, 0.0};
  const auto H = model::build_stark(s);
  const auto e = spectral::eig_hermitian(H);
  const double scale = max_abs(H.m);
  for (int k = 0; k < 10; ++k) {
    const CVector r = H.m * e.vectors.col(k) - e.values(k) * e.vectors.col(k);
    CHECK(r.norm() < 1e-10 * scale);
  }
  CHECK(max_abs(e.vectors.adjoint() * e.vectors - CMatrix::Identity(10, 10)) < 1e-10);
  for (int k = 2; k < 8; ++k) CHECK(std::abs(e.values(k + 1) - e.values(k) - 4.0) < 0.02 * 4.0);
  // Weak field: spacings far from h.
  const auto w = spectral::eig_hermitian(model::build_stark({10, 1.0, 0.01, 0.0}));
  CHECK(std::abs(w.values(5) - w.values(4) - 0.01) > 0.1);
}

TEST_CASE("eig_biorthogonal: Hermitian input") {
  const auto H = model::build_stark({8, 1.0, 0.3, 0.0});
  const auto b = spectral::eig_biorthogonal(H);
  const auto e = spectral::eig_hermitian(H);
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(b.values(k).imag()) < 1e-12);
    CHECK(std::abs(b.values(k).real() - e.values(k)) < 1e-10);
    CHECK((b.left.col(k) - b.right.col(k)).norm() < 1e-10);
  }
}

TEST_CASE("eig_biorthogonal: gamma = 0 agrees with eig_hermitian for every family") {
  for (auto f : {model::Family::Stark, model::Family::EffectiveDephasing, model::Family::HatanoNelson}) {
    const auto H = model::build(f, {12, 1.0, 0.15, 0.0});
    const auto b = spectral::eig_biorthogonal(H);
    const auto e = spectral::eig_hermitian(H);
    for (int k = 0; k < 12; ++k) CHECK(std::abs(b.values(k) - e.values(k)) < 1e-10);
  }
}

TEST_CASE("eig_biorthogonal: unidirectional L=4 eigenvalues") {
  const auto b = spectral::eig_biorthogonal(model::build_unidirectional({4, 1.0, 1.0, 0.0}));
  for (int k = 0; k < 4; ++k) CHECK(std::abs(b.values(k) - Complex(k + 1.0)) < 1e-12);
}

TEST_CASE("eig_biorthogonal: Hatano-Nelson Gram matrix and completeness") {
  const auto H = model::build_hatano_nelson({20, 1.0, 0.01, 0.05});
  const auto b = spectral::eig_biorthogonal(H);
  const CMatrix gram = b.left.adjoint() * b.right;
  CHECK(max_abs(gram - CMatrix::Identity(20, 20)) < 1e-8);
  CHECK(b.biorthonormality_residual() < 1e-8);
  CHECK(b.completeness_residual() < 1e-8 * b.condition);
  CHECK(max_abs(b.reconstruct() - H.m) < 1e-8 * b.condition);
  for (int k = 0; k + 1 < 20; ++k) CHECK(b.values(k).real() <= b.values(k + 1).real());
  for (int k = 0; k < 20; ++k) {
    Eigen::Index imax;
    b.right.col(k).cwiseAbs().maxCoeff(&imax);
    CHECK(std::abs(b.right(imax, k).imag()) < 1e-12);
    CHECK(b.right(imax, k).real() > 0.0);
  }
}

TEST_CASE("eig_biorthogonal: defective matrix is refused") {
  CHECK_THROWS_AS(spectral::eig_biorthogonal(model::build_unidirectional({6, 1.0, 0.0, 0.0})),
                  ExceptionalPointProximity);
}

TEST_CASE("unidirectional_eigvec closed form") {
  const LatticeSpec s{6, 1.0, 1.0, 0.0};
  const CVector v0 = spectral::unidirectional_eigvec(0, s);
  CHECK(std::abs(v0(0) - Complex(1.0)) == 0.0);
  CHECK(v0.tail(5).norm() == 0.0);
  const CVector v2 = spectral::unidirectional_eigvec(2, s);
  CHECK(std::abs(v2(0) - 0.5) < 1e-15);
  CHECK(std::abs(v2(1) - 1.0) < 1e-15);
  CHECK(std::abs(v2(2) - 1.0) < 1e-15);
  CHECK(v2.tail(3).norm() == 0.0);
  CHECK_THROWS_AS(spectral::unidirectional_eigvec(1, {6, 1.0, 0.0, 0.0}), InvalidArgument);

  for (double h : {0.05, 0.3, 1.0}) {
    const LatticeSpec sp{25, 1.0, h, 0.0};
    const auto H = model::build_unidirectional(sp);
    for (int n = 0; n < 25; ++n) {
      const CVector v = spectral::unidirectional_eigvec_normalized(n, sp);
      const CVector r = H.m * v - (n + 1) * h * v;
      CHECK(r.norm() < 1e-9 * std::max(1.0, (H.m * v).norm()));
    }
  }
}

TEST_CASE("unidirectional closed form against the general solver where it is well conditioned") {
  for (double h : {2.0, 1.0, 0.5}) {
    const LatticeSpec s{10, 1.0, h, 0.0};
    const auto b = spectral::eig_biorthogonal(model::build_unidirectional(s));
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
      const CVector a = spectral::unidirectional_eigvec_normalized(n, s);
      CVector g = b.normalized_right(n);
      const Complex ov = g.dot(a);
      g *= ov / std::abs(ov);
      worst = std::max(worst, (a - g).norm());
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("expm: closed forms") {
  const CVector v = CVector::Random(4);
  CHECK((expm_action(CMatrix::Zero(4, 4), v, 2.5) - v).norm() == 0.0);

  // Real rotation generator: e^{theta [[0,-1],[1,0]]} rotates by theta.
  CMatrix g(2, 2);
  g << 0, -1, 1, 0;
  const double theta = 0.9;
  const CMatrix R = expm(g, theta);
  CHECK(std::abs(R(0, 0) - std::cos(theta)) < 1e-15);
  CHECK(std::abs(R(1, 0) - std::sin(theta)) < 1e-15);
  CHECK(std::abs(R(0, 1) + std::sin(theta)) < 1e-15);

  std::mt19937_64 rng(3);
  for (double scale : {0.01, 0.3, 2.0, 20.0, 300.0}) {
    const CMatrix K = stark::testing::random_hermitian(12, rng) * scale;
    const CMatrix U = expm(-kI * K);
    CHECK(max_abs(U.adjoint() * U - CMatrix::Identity(12, 12)) < 1e-12 * std::max(1.0, scale));
    CHECK(max_abs(U - exp_via_eigh(K, -kI)) < 1e-10 * std::max(1.0, scale));
    const CVector x = stark::testing::random_state(12, rng);
    CHECK(std::abs(expm_action(-kI * K, x, 1.0).norm() - 1.0) < 1e-12 * std::max(1.0, scale));
  }
  // Hermitian generator: real exponential growth.
  const CMatrix K = stark::testing::random_hermitian(8, rng);
  CHECK(max_abs(expm(K, 1.5) - exp_via_eigh(K, 1.5)) < 1e-10 * max_abs(exp_via_eigh(K, 1.5)));
}

TEST_CASE("expm: diagonalizable non-normal matrix against the spectral route") {
  const auto H = model::build_hatano_nelson({15, 1.0, 0.2, 0.3});
  const auto b = spectral::eig_biorthogonal(H);
  const double t = 3.0;
  const CVector d = (-kI * t * b.values).array().exp();
  const CMatrix spectral_route = b.right * d.asDiagonal() * b.left.adjoint();
  const CMatrix U = expm(-kI * H.m, t);
  CHECK(max_abs(U - spectral_route) < 1e-10 * max_abs(U));
}

TEST_CASE("expm: overflow guard") {
  CMatrix A = CMatrix::Identity(3, 3);
  CHECK_THROWS_AS(expm(A, 800.0), ExponentOverflow);
  CHECK_NOTHROW(expm(A, 10.0));
  CHECK_THROWS_AS(expm(A, std::numeric_limits<double>::infinity()), InvalidArgument);
  CHECK_THROWS_AS(expm(CMatrix::Ones(2, 3)), InvalidArgument);
}

TEST_CASE("taylor_action matches expm, with and without a shift") {
  std::mt19937_64 rng(11);
  const CMatrix A = stark::testing::random_matrix(10, rng) * 0.7;
  const CVector x = stark::testing::random_state(10, rng);
  const double bound = A.cwiseAbs().colwise().sum().maxCoeff();
  for (double t : {0.1, 1.0, 7.0}) {
    const CVector ref = expm_action(A, x, t);
    const CVector got = taylor_action([&](const CVector& y) -> CVector { return A * y; }, bound, Complex{}, x, t);
    CHECK((got - ref).norm() < 1e-10 * ref.norm());
    const Complex shift(-0.3, 0.4);
    const CMatrix As = A - shift * CMatrix::Identity(10, 10);
    const CVector shifted = taylor_action([&](const CVector& y) -> CVector { return As * y; },
                                          As.cwiseAbs().colwise().sum().maxCoeff(), shift, x, t);
    CHECK((shifted - ref).norm() < 1e-10 * ref.norm());
  }
}

TEST_CASE("unidirectional closed form against a plain Schur eigensolver up to J/h = 20") {
  // eig_biorthogonal refuses these (condition number overflows) but the
  // matrix is already triangular, so the Schur route is exact.
  for (double h : {1.0, 0.1, 0.05}) {
    const LatticeSpec s{30, 1.0, h, 0.0};
    Eigen::ComplexEigenSolver<CMatrix> es(model::build_unidirectional(s).m);
    double worst = 0.0;
    for (int n = 0; n < 30; ++n) {
      Eigen::Index best;
      (es.eigenvalues().array() - Complex((n + 1) * h)).abs().minCoeff(&best);
      CHECK(std::abs(es.eigenvalues()(best) - Complex((n + 1) * h)) < 1e-14);
      CVector g = es.eigenvectors().col(best).normalized();
      const CVector a = spectral::unidirectional_eigvec_normalized(n, s);
      const Complex ov = g.dot(a);
      g *= ov / std::abs(ov);
      worst = std::max(worst, (a - g).norm());
    }
    CHECK(worst < 1e-8);
  }
}
