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

#include "stark/types.hpp"

#include <cmath>
#include <sstream>

#include "stark/errors.hpp"

namespace stark {

void LatticeSpec::validate() const {
  std::ostringstream why;
  if (L < 2) why << "L must be >= 2 (got " << L << ")";
  else if (!(J > 0.0) || !std::isfinite(J)) why << "J must be finite and > 0 (got " << J << ")";
  else if (!(h >= 0.0) || !std::isfinite(h)) why << "h must be finite and >= 0 (got " << h << ")";
  else if (!(gamma >= 0.0) || !std::isfinite(gamma)) why << "gamma must be finite and >= 0 (got " << gamma << ")";
  if (!why.str().empty()) throw InvalidArgument("LatticeSpec: " + why.str());
}

bool OperatorMatrix::consistent() const {
  if (m.rows() != m.cols()) return false;
  if (!m.allFinite()) return false;
  if (!hermitian) return true;
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return asym <= 1e-12 * std::max(scale, 1e-300);
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::basis(Eigen::Index dim, Eigen::Index site) {
  CMatrix rho = CMatrix::Zero(dim, dim);
  rho(site, site) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho_.squaredNorm();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

void DensityMatrix::symmetrize() {
  CMatrix sym = 0.5 * (rho_ + rho_.adjoint());
  rho_ = std::move(sym);
}

void DensityMatrix::check(double trace_tol, double herm_tol, double pos_tol) const {
  const Complex tr = trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " deviates from 1";
    throw InvariantViolation(os.str());
  }
  const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > herm_tol) throw InvariantViolation("density matrix is not Hermitian");
  const double lo = min_eigenvalue();
  if (lo < -pos_tol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lo;
    throw InvariantViolation(os.str());
  }
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a - b;
  CMatrix herm = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b));
}

}  // namespace stark
