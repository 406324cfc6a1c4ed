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

#include <vector>

#include "stark/types.hpp"

namespace stark::spectral {

struct HermitianEigen {
  RVector values;  // ascending
  CMatrix vectors; // orthonormal columns
};

// Rejects operators whose Hermitian tag is unset.
HermitianEigen eig_hermitian(const OperatorMatrix& H);

// Right/left eigenvectors normalized so that <L_m|R_n> = delta_mn, using the
// principal square root of <L_n|R_n> on both sides. Eigenvalues are sorted by
// real part, then imaginary part; each right vector's largest-magnitude
// component is made real positive (the left vector is rotated with it).
struct BiorthogonalSystem {
  CVector values;
  CMatrix right;     // columns |R_n>
  CMatrix left;      // columns |L_n>
  double condition;  // 2-norm condition number of the unit-column right matrix

  // max |<L_m|R_n> - delta_mn|
  double biorthonormality_residual() const;
  // max |sum_n |R_n><L_n| - I|
  double completeness_residual() const;
  // sum_n E_n |R_n><L_n|
  CMatrix reconstruct() const;
  // |R_n> / || |R_n> ||
  CVector normalized_right(Eigen::Index n) const;
};

inline constexpr double kExceptionalPointCondition = 1e10;

// Throws ExceptionalPointProximity when the eigenvector matrix condition
// number exceeds kExceptionalPointCondition.
BiorthogonalSystem eig_biorthogonal(const OperatorMatrix& H);

// Closed-form right eigenvector of the unidirectional lattice, 0-based index
// n in [0, L-1]: c_{n,j} = (J/h)^{n-j} / (n-j)! for j < n, 1 at j = n, 0 above.
// Component j of the result is site j + 1 of the 1-based lattice; its
// eigenvalue is (n + 1) h. Unnormalized; throws ExponentOverflow if a
// coefficient does not fit in a double.
CVector unidirectional_eigvec(int n, const LatticeSpec& spec);

// Same vector scaled to unit norm, evaluated in log space so that any J/h is
// representable.
CVector unidirectional_eigvec_normalized(int n, const LatticeSpec& spec);

}  // namespace stark::spectral
