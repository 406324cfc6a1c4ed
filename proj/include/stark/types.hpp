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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace stark {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Physical configuration of a single-particle lattice. Energies in units of J,
// times in units of 1/J, hbar = 1.
struct LatticeSpec {
  int L = 2;
  double J = 1.0;
  double h = 0.0;
  double gamma = 0.0;

  // Throws InvalidArgument on L < 2, J <= 0, negative or non-finite h / gamma.
  void validate() const;
};

// Dense complex square matrix with a Hermiticity tag.
struct OperatorMatrix {
  CMatrix m;
  bool hermitian = false;

  OperatorMatrix() = default;
  OperatorMatrix(CMatrix matrix, bool is_hermitian) : m(std::move(matrix)), hermitian(is_hermitian) {}

  Eigen::Index dim() const { return m.rows(); }

  // Checks the tag against the entries and that everything is finite.
  bool consistent() const;
};

// Columnwise-vectorized generator acting on density matrices of dimension
// sqrt(dim()).
struct Superoperator {
  CMatrix m;
  Eigen::Index dim() const { return m.rows(); }
};

// Trace-one Hermitian positive semidefinite matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {}

  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix basis(Eigen::Index dim, Eigen::Index site);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const CMatrix& matrix() const { return rho_; }
  CMatrix& matrix() { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  Complex trace() const { return rho_.trace(); }
  double purity() const;
  double min_eigenvalue() const;

  // rho <- (rho + rho^dagger) / 2
  void symmetrize();

  // Throws InvariantViolation if trace, Hermiticity or positivity drift
  // beyond the given tolerances.
  void check(double trace_tol = 1e-10, double herm_tol = 1e-10, double pos_tol = 1e-8) const;

 private:
  CMatrix rho_;
};

// Trace distance 0.5 * ||a - b||_1.
double trace_distance(const CMatrix& a, const CMatrix& b);

// |<a|b>|^2 for unit vectors.
double fidelity(const CVector& a, const CVector& b);

}  // namespace stark
