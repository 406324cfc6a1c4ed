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

// Hamiltonians and Lindblad operators for a single particle on an open chain.
//
// Sites are labelled j = 1..L, so the Stark term is h * j |j><j|. A uniform
// diagonal shift only changes a global phase, so observables and Fisher
// information do not depend on this choice.

#include <vector>

#include "stark/types.hpp"

namespace stark::model {

// mu = asinh(gamma), evaluated as log(gamma + sqrt(gamma^2 + 1)).
double nonreciprocity(double gamma);

// J (|j><j+1| + |j+1><j|) + h j |j><j|
OperatorMatrix build_stark(const LatticeSpec& spec);

// n_j = |j><j|, j = 1..L
std::vector<OperatorMatrix> build_dephasing_ops(const LatticeSpec& spec);

// H_S - (i gamma / 2) sum_j n_j^dagger n_j
OperatorMatrix build_effective_dephasing(const LatticeSpec& spec);

// Couplings J e^{mu} on (j, j+1) and J e^{-mu} on (j+1, j), mu = asinh(gamma).
OperatorMatrix build_hatano_nelson(const LatticeSpec& spec);

// Hopping only to the left: J |j><j+1| + h j |j><j|.
OperatorMatrix build_unidirectional(const LatticeSpec& spec);

struct HermitianSplit {
  OperatorMatrix hermitian;       // H_h = (H + H^dagger) / 2
  OperatorMatrix anti_hermitian;  // H_ah, Hermitian, with H = H_h - i gamma_scale H_ah
  double gamma_scale = 1.0;
};

// gamma_scale must be > 0; it is passed through unchanged.
HermitianSplit decompose_hermitian_antihermitian(const OperatorMatrix& H, double gamma_scale = 1.0);

// Tridiagonal bands of an operator; used by the structured Lindblad action.
struct Tridiagonal {
  std::vector<Complex> diag;
  std::vector<Complex> upper;  // (j, j+1)
  std::vector<Complex> lower;  // (j+1, j)
};

// Extracts the bands; throws InvalidArgument if anything lies outside them.
Tridiagonal tridiagonal_bands(const CMatrix& H);

// Which Hamiltonian family a probe uses.
enum class Family { Stark, EffectiveDephasing, HatanoNelson, Unidirectional };

OperatorMatrix build(Family family, const LatticeSpec& spec);

}  // namespace stark::model
