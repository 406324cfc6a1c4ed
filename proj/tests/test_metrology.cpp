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
#include "stark/expm.hpp"
#include "stark/lindblad.hpp"
#include "stark/metrology.hpp"
#include "stark/model.hpp"
#include "stark/nh_dynamics.hpp"
#include "stark/probes.hpp"
#include "stark/spectral.hpp"
#include "test_support.hpp"

using namespace stark;
using stark::testing::max_abs;

namespace {

// d/ds e^{A + sE} at s = 0 from the upper-right block of exp([[A, E], [0, A]]).
CMatrix frechet(const CMatrix& A, const CMatrix& E) {
  const Eigen::Index n = A.rows();
  CMatrix big = CMatrix::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = A;
  big.bottomRightCorner(n, n) = A;
  big.topRightCorner(n, n) = E;
  return expm(big).topRightCorner(n, n);
}

CMatrix site_number(int L) {
  CMatrix N = CMatrix::Zero(L, L);
  for (int j = 0; j < L; ++j) N(j, j) = j + 1.0;
  return N;
}

}  // namespace

TEST_CASE("qfi_pure: two-level phase") {
  for (double th : {0.0, 0.4, 2.0}) {
    CVector psi(2), dpsi(2);
    psi << 1.0, std::exp(kI * th);
    psi /= std::sqrt(2.0);
    dpsi << 0.0, kI * std::exp(kI * th) / std::sqrt(2.0);
    CHECK(metrology::qfi_pure(psi, dpsi).value == doctest::Approx(1.0).epsilon(1e-14));
  }
  CVector psi(2);
  psi << 1.0, 1.0;
  CHECK_THROWS_AS(metrology::qfi_pure(psi, psi), InvalidArgument);
  // parallel derivative carries no information
  psi.normalize();
  CHECK(metrology::qfi_pure(psi, kI * 0.3 * psi).value == doctest::Approx(0.0));
}

TEST_CASE("qfi_mixed: classical qubit and the pure-state limit") {
  const double p = 0.3, dp = 0.7;
  CMatrix rho = CMatrix::Zero(2, 2), drho = CMatrix::Zero(2, 2);
  rho.diagonal() << p, 1 - p;
  drho.diagonal() << dp, -dp;
  const double expect = dp * dp / p + dp * dp / (1 - p);
  CHECK(metrology::qfi_mixed(rho, drho).fisher.value == doctest::Approx(expect).epsilon(1e-13));
  CHECK(metrology::cfi({p, 1 - p}, {dp, -dp}).value == doctest::Approx(expect).epsilon(1e-13));

  std::mt19937_64 rng(4);
  const CVector psi = stark::testing::random_state(6, rng);
  CVector dpsi = stark::testing::random_state(6, rng);
  dpsi -= psi.dot(dpsi) * psi;  // keep the derivative norm-preserving
  const CMatrix r = psi * psi.adjoint();
  const CMatrix dr = dpsi * psi.adjoint() + psi * dpsi.adjoint();
  const auto sld = metrology::qfi_mixed(r, dr);
  CHECK(sld.fisher.value == doctest::Approx(metrology::qfi_pure(psi, dpsi).value).epsilon(1e-10));
  // SLD equation: drho = (L rho + rho L) / 2 on the support
  CHECK(max_abs(0.5 * (sld.sld * r + r * sld.sld) - dr) < 1e-10);
  CHECK_THROWS_AS(metrology::qfi_mixed(r, dr + CMatrix::Identity(6, 6)), InvalidArgument);
}

TEST_CASE("QFI is bounded below by the CFI of site populations") {
  std::mt19937_64 rng(5);
  for (int r = 0; r < 10; ++r) {
    const CVector psi = stark::testing::random_state(8, rng);
    CVector dpsi = stark::testing::random_matrix(8, rng).col(0);
    dpsi -= Complex(psi.dot(dpsi).real()) * psi;
    std::vector<double> p, dp;
    metrology::site_distribution(psi, dpsi, p, dp);
    CHECK(metrology::cfi(p, dp).value <= metrology::qfi_pure(psi, dpsi).value * (1 + 1e-12));
  }
  const auto s = metrology::cfi({0.0, 1.0}, {0.1, -0.1});
  CHECK(s.singular);
  CHECK(std::isinf(s.value));
}

TEST_CASE("snr and default step") {
  CHECK(metrology::snr(0.01, 1000, 2.5e6) == doctest::Approx(0.01 * std::sqrt(2.5e9)));
  CHECK_THROWS_AS(metrology::snr(-1.0, 1, 1), InvalidArgument);
  CHECK(metrology::default_step(0.001) == 1e-6);
  CHECK(metrology::default_step(0.5) == doctest::Approx(5e-5));
}

TEST_CASE("state_derivative: exact for a phase family, Richardson agrees") {
  const CVector g = nh::gaussian_packet(10, 2.0);
  const CMatrix N = site_number(10);
  auto fam = [&](double h) -> CVector { return expm(-kI * N, h * 3.0) * g; };
  metrology::DerivativeOptions opt;
  const auto d = metrology::state_derivative(fam, 0.2, opt);
  // Var(N) * t^2 * 4
  const double m1 = (g.cwiseAbs2().array() * N.diagonal().real().array()).sum();
  const double m2 = (g.cwiseAbs2().array() * N.diagonal().real().array().square()).sum();
  const double expect = 4 * 9.0 * (m2 - m1 * m1);
  CHECK(metrology::qfi_pure(d.value, d.derivative).value == doctest::Approx(expect).epsilon(1e-7));
  opt.richardson = true;
  const auto r = metrology::state_derivative(fam, 0.2, opt);
  CHECK(metrology::qfi_pure(r.value, r.derivative).value == doctest::Approx(expect).epsilon(1e-9));
  CHECK_THROWS_AS(probes::unitary_qfi({6, 1.0, 1e-7, 0.0}, {1.0}, {.step = 1e-6}), InvalidArgument);
  CHECK_THROWS_AS(probes::lindblad_qfi({6, 1.0, 1e-7, 0.1}, {1.0}, {.step = 1e-6}), InvalidArgument);
}

TEST_CASE("unitary pipeline against the Frechet-derivative oracle") {
  const LatticeSpec s{10, 1.0, 0.2, 0.0};
  const CMatrix H = model::build_stark(s).m;
  const CVector psi0 = nh::site_state(10, lindblad::middle_site(10));
  const std::vector<double> times{0.5, 4.0, 12.0};
  const auto series = probes::unitary_qfi(s, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const CVector psi = expm(-kI * H, t) * psi0;
    const CVector dpsi = frechet(-kI * t * H, -kI * t * site_number(10)) * psi0;
    const double oracle = metrology::qfi_pure(psi, dpsi).value;
    CHECK(series.fq[k] == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("Lindblad pipeline against the Frechet-derivative oracle") {
  const LatticeSpec s{6, 1.0, 0.3, 0.05};
  const auto liou = lindblad::build_liouvillian(s);
  const CMatrix dL = lindblad::build_liouvillian({6, 1.0, 1.3, 0.05}).m - liou.m;  // linear in h
  const CVector v0 = lindblad::vectorize(DensityMatrix::basis(6, lindblad::middle_site(6)));
  const std::vector<double> times{1.0, 5.0, 20.0};
  const auto series = probes::lindblad_qfi(s, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    CMatrix rho = lindblad::devectorize(expm(liou.m, t) * v0).matrix();
    CMatrix drho = lindblad::devectorize(frechet(t * liou.m, t * dL) * v0).matrix();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    drho = 0.5 * (drho + drho.adjoint()).eval();
    const double oracle = metrology::qfi_mixed(rho, drho).fisher.value;
    CHECK(series.fq[k] == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("gamma = 0 pipelines coincide") {
  const LatticeSpec s{8, 1.0, 0.1, 0.0};
  const std::vector<double> times{1.0, 6.0, 15.0};
  const auto u = probes::unitary_qfi(s, times);
  const auto l = probes::lindblad_qfi(s, times);
  const auto n = probes::nh_qfi(model::Family::HatanoNelson, s, nh::site_state(8, lindblad::middle_site(8)), times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(l.fq[k] == doctest::Approx(u.fq[k]).epsilon(1e-5));
    CHECK(n.fq[k] == doctest::Approx(u.fq[k]).epsilon(1e-6));
  }
}

TEST_CASE("eigenstate QFI against first-order perturbation theory") {
  const LatticeSpec s{12, 1.0, 0.25, 0.0};
  const auto e = spectral::eig_hermitian(model::build_stark(s));
  const CMatrix N = site_number(12);
  for (int n : {0, 5, 11}) {
    double oracle = 0.0;
    for (int m = 0; m < 12; ++m) {
      if (m == n) continue;
      const Complex el = e.vectors.col(m).dot(N * e.vectors.col(n));
      oracle += 4 * std::norm(el) / std::pow(e.values(n) - e.values(m), 2);
    }
    CHECK(probes::eigenstate_qfi(model::Family::Stark, s, n) == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(probes::eigenstate_qfi(model::Family::HatanoNelson, s, n) == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("unidirectional eigenstate QFI from the closed form") {
  // n = 1 vector is (J/h, 1, 0, ...) normalized; F = 4 (d theta/dh)^2 with
  // tan theta = h / J, i.e. F = 4 J^2 / (J^2 + h^2)^2
  for (double h : {0.05, 0.5, 2.0}) {
    const double expect = 4.0 / std::pow(1.0 + h * h, 2);
    CHECK(probes::eigenstate_qfi(model::Family::Unidirectional, {8, 1.0, h, 0.0}, 1) ==
          doctest::Approx(expect).epsilon(1e-7));
  }
  CHECK(probes::eigenstate_qfi(model::Family::Unidirectional, {8, 1.0, 0.3, 0.0}, 0) == doctest::Approx(0.0));
}

TEST_CASE("over_t2 drops t = 0") {
  probes::QfiSeries s;
  s.times = {0.0, 1.0, 2.0};
  s.fq = {0.0, 3.0, 8.0};
  std::vector<double> t, v;
  probes::over_t2(s, t, v);
  REQUIRE(t.size() == 2);
  CHECK(v[0] == 3.0);
  CHECK(v[1] == 2.0);
  const auto u = probes::uniform_times(0.5, 4);
  CHECK(u == std::vector<double>{0.5, 1.0, 1.5, 2.0});
}
