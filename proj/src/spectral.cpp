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

#include "stark/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "stark/errors.hpp"

namespace stark::spectral {

HermitianEigen eig_hermitian(const OperatorMatrix& H) {
  if (!H.hermitian) throw InvalidArgument("eig_hermitian: operator is not tagged Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H.m);
  if (es.info() != Eigen::Success) throw NumericalError("eig_hermitian: solver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double BiorthogonalSystem::biorthonormality_residual() const {
  const CMatrix G = left.adjoint() * right;
  return (G - CMatrix::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

double BiorthogonalSystem::completeness_residual() const {
  const CMatrix P = right * left.adjoint();
  return (P - CMatrix::Identity(P.rows(), P.cols())).cwiseAbs().maxCoeff();
}

CMatrix BiorthogonalSystem::reconstruct() const {
  return right * values.asDiagonal() * left.adjoint();
}

CVector BiorthogonalSystem::normalized_right(Eigen::Index n) const {
  return right.col(n).normalized();
}

BiorthogonalSystem eig_biorthogonal(const OperatorMatrix& H) {
  const Eigen::Index n = H.m.rows();
  if (H.m.cols() != n) throw InvalidArgument("eig_biorthogonal: matrix is not square");

  CVector values;
  CMatrix right;
  if (H.hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H.m);
    values = es.eigenvalues().cast<Complex>();
    right = es.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<CMatrix> es(H.m, true);
    if (es.info() != Eigen::Success) throw NumericalError("eig_biorthogonal: solver did not converge");
    values = es.eigenvalues();
    right = es.eigenvectors();
  }
  for (Eigen::Index k = 0; k < n; ++k) right.col(k).normalize();

  Eigen::BDCSVD<CMatrix> svd(right);
  const auto& sv = svd.singularValues();
  const double condition = sv(n - 1) > 0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
  if (!(condition <= kExceptionalPointCondition)) {
    std::ostringstream os;
    os << "eig_biorthogonal: eigenvector condition number " << condition
       << " exceeds " << kExceptionalPointCondition << " (near an exceptional point)";
    throw ExceptionalPointProximity(os.str());
  }

  // Rows of R^{-1} are the dual (left) vectors, paired by construction.
  CMatrix left;
  if (H.hermitian) {
    left = right;
  } else {
    left = right.partialPivLu().inverse().adjoint();
    for (Eigen::Index k = 0; k < n; ++k) left.col(k).normalize();
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });

  BiorthogonalSystem sys;
  sys.values.resize(n);
  sys.right.resize(n, n);
  sys.left.resize(n, n);
  sys.condition = condition;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[k];
    CVector r = right.col(src);
    CVector l = left.col(src);
    const Complex root = std::sqrt(l.dot(r));  // principal branch of sqrt(<L|R>)
    r /= root;
    l /= std::conj(root);
    Eigen::Index big = 0;
    r.cwiseAbs().maxCoeff(&big);
    const Complex phase = std::conj(r(big)) / std::abs(r(big));
    r *= phase;
    l *= phase;
    sys.values(k) = values(src);
    sys.right.col(k) = r;
    sys.left.col(k) = l;
  }
  return sys;
}

namespace {

// log |c_{n,j}| for j <= n, with x = J / h.
double log_coefficient(int n, int j, double log_x) {
  const int k = n - j;
  return k * log_x - std::lgamma(static_cast<double>(k) + 1.0);
}

void check_uni_args(int n, const LatticeSpec& spec) {
  spec.validate();
  if (!(spec.h > 0.0)) throw InvalidArgument("unidirectional_eigvec: h = 0 is defective");
  if (n < 0 || n >= spec.L) throw InvalidArgument("unidirectional_eigvec: n outside [0, L-1]");
}

}  // namespace

CVector unidirectional_eigvec(int n, const LatticeSpec& spec) {
  check_uni_args(n, spec);
  const double log_x = std::log(spec.J / spec.h);
  CVector v = CVector::Zero(spec.L);
  for (int j = 0; j <= n; ++j) {
    const double lc = log_coefficient(n, j, log_x);
    if (lc > 709.0) throw ExponentOverflow("unidirectional_eigvec: coefficient overflows; use the normalized form");
    v(j) = std::exp(lc);
  }
  return v;
}

CVector unidirectional_eigvec_normalized(int n, const LatticeSpec& spec) {
  check_uni_args(n, spec);
  const double log_x = std::log(spec.J / spec.h);
  std::vector<double> logs(n + 1);
  for (int j = 0; j <= n; ++j) logs[j] = log_coefficient(n, j, log_x);
  const double top = *std::max_element(logs.begin(), logs.end());
  CVector v = CVector::Zero(spec.L);
  for (int j = 0; j <= n; ++j) v(j) = std::exp(logs[j] - top);
  return v.normalized();
}

}  // namespace stark::spectral
