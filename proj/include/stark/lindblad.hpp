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

// Dephasing master equation on the Stark chain,
//   d rho / dt = -i [H_S, rho] + (gamma / 2) sum_j (2 n_j rho n_j - n_j rho - rho n_j),
// with columnwise vectorization vec(A rho B) = (B^T kron A) vec(rho).

#include <vector>

#include "stark/model.hpp"
#include "stark/types.hpp"

namespace stark::lindblad {

CVector vectorize(const DensityMatrix& rho);
CVector vectorize(const CMatrix& m);
// Rejects lengths that are not perfect squares.
DensityMatrix devectorize(const CVector& v);

// Dense L^2 x L^2 generator.
Superoperator build_liouvillian(const LatticeSpec& spec);

// Same generator in matrix-free form, applied through the SIMD tridiagonal
// kernel. The Hamiltonian diagonal is centred first; that leaves the
// commutator unchanged and halves the norm bound used for step selection.
class DephasingGenerator {
 public:
  explicit DephasingGenerator(const LatticeSpec& spec);

  // d rho / dt
  CMatrix apply(const CMatrix& rho) const;
  // Upper bound on the induced 1-norm of the generator after the shift.
  double norm_bound() const { return norm_bound_; }
  // Scalar removed from the generator; e^{Lt} = e^{shift t} e^{(L - shift)t}.
  double shift() const { return shift_; }
  // e^{L t} rho via the truncated Taylor action.
  CMatrix evolve(const CMatrix& rho, double t) const;
  int dim() const { return static_cast<int>(bands_.diag.size()); }

 private:
  model::Tridiagonal bands_;
  double gamma_;
  double shift_;
  double norm_bound_;
};

enum class Method {
  Structured,           // matrix-free Taylor action (default)
  DenseSuperoperator,   // one dense exponential of the Liouvillian per distinct time gap
};

inline constexpr double kPositivityTolerance = 1e-6;

// rho(t_k) for each requested time. Times must be ascending with
// times[0] >= 0. Each output is re-symmetrized and checked; throws
// PositivityLoss when the smallest eigenvalue drops below -1e-6.
std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const LatticeSpec& spec,
                                     const std::vector<double>& times,
                                     Method method = Method::Structured);

// Site ceil(L/2) in 1-based labels, returned 0-based.
int middle_site(int L);

}  // namespace stark::lindblad
