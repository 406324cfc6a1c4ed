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

#include "stark/model.hpp"

#include <cmath>

#include "stark/errors.hpp"

namespace stark::model {
namespace {

CMatrix chain(const LatticeSpec& spec, Complex left_hop, Complex right_hop) {
  spec.validate();
  const int L = spec.L;
  CMatrix H = CMatrix::Zero(L, L);
  for (int j = 0; j < L; ++j) H(j, j) = spec.h * static_cast<double>(j + 1);
  for (int j = 0; j + 1 < L; ++j) {
    H(j, j + 1) = left_hop;
    H(j + 1, j) = right_hop;
  }
  return H;
}

}  // namespace

double nonreciprocity(double gamma) { return std::log(gamma + std::sqrt(gamma * gamma + 1.0)); }

OperatorMatrix build_stark(const LatticeSpec& spec) {
  return {chain(spec, spec.J, spec.J), true};
}

std::vector<OperatorMatrix> build_dephasing_ops(const LatticeSpec& spec) {
  spec.validate();
  std::vector<OperatorMatrix> ops;
  ops.reserve(spec.L);
  for (int j = 0; j < spec.L; ++j) {
    CMatrix n = CMatrix::Zero(spec.L, spec.L);
    n(j, j) = 1.0;
    ops.emplace_back(std::move(n), true);
  }
  return ops;
}

OperatorMatrix build_effective_dephasing(const LatticeSpec& spec) {
  CMatrix H = chain(spec, spec.J, spec.J);
  // sum_j n_j^dagger n_j is the identity for site projectors.
  H.diagonal().array() -= Complex{0.0, 0.5 * spec.gamma};
  return {std::move(H), spec.gamma == 0.0};
}

OperatorMatrix build_hatano_nelson(const LatticeSpec& spec) {
  const double mu = nonreciprocity(spec.gamma);
  return {chain(spec, spec.J * std::exp(mu), spec.J * std::exp(-mu)), spec.gamma == 0.0};
}

OperatorMatrix build_unidirectional(const LatticeSpec& spec) {
  return {chain(spec, spec.J, 0.0), false};
}

HermitianSplit decompose_hermitian_antihermitian(const OperatorMatrix& H, double gamma_scale) {
  if (H.m.rows() != H.m.cols()) throw InvalidArgument("decompose: matrix is not square");
  if (!(gamma_scale > 0.0)) throw InvalidArgument("decompose: gamma_scale must be > 0");
  CMatrix herm = 0.5 * (H.m + H.m.adjoint());
  // H - H_h = -i gamma H_ah  =>  H_ah = i (H - H_h) / gamma
  CMatrix anti = (kI / gamma_scale) * (H.m - herm);
  anti = 0.5 * (anti + anti.adjoint()).eval();
  return {{std::move(herm), true}, {std::move(anti), true}, gamma_scale};
}

Tridiagonal tridiagonal_bands(const CMatrix& H) {
  const Eigen::Index n = H.rows();
  if (H.cols() != n) throw InvalidArgument("tridiagonal_bands: matrix is not square");
  Tridiagonal t;
  t.diag.resize(n);
  t.upper.resize(n > 0 ? n - 1 : 0);
  t.lower.resize(n > 0 ? n - 1 : 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(i - j) > 1 && H(i, j) != Complex{}) {
        throw InvalidArgument("tridiagonal_bands: matrix has entries outside the three bands");
      }
    }
    t.diag[i] = H(i, i);
    if (i + 1 < n) {
      t.upper[i] = H(i, i + 1);
      t.lower[i] = H(i + 1, i);
    }
  }
  return t;
}

OperatorMatrix build(Family family, const LatticeSpec& spec) {
  switch (family) {
    case Family::Stark: return build_stark(spec);
    case Family::EffectiveDephasing: return build_effective_dephasing(spec);
    case Family::HatanoNelson: return build_hatano_nelson(spec);
    case Family::Unidirectional: return build_unidirectional(spec);
  }
  throw InvalidArgument("unknown Hamiltonian family");
}

}  // namespace stark::model
