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

#include "stark/expm.hpp"

#include <array>
#include <sstream>

#include "stark/errors.hpp"

namespace stark {
namespace {

double norm1(const CMatrix& A) { return A.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t N>
CMatrix pade(const CMatrix& A, const std::array<double, N>& b) {
  // Low degree: U = A * sum_odd b_k A^{k-1}, V = sum_even b_k A^k.
  const Eigen::Index n = A.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix A2 = A * A;
  CMatrix power = I;
  CMatrix u_acc = CMatrix::Zero(n, n);
  CMatrix v_acc = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < N; k += 2) {
    v_acc += b[k] * power;
    u_acc += b[k + 1] * power;
    if (k + 2 < N) power = (power * A2).eval();
  }
  const CMatrix U = A * u_acc;
  return (v_acc - U).partialPivLu().solve(v_acc + U);
}

CMatrix pade13(const CMatrix& A) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const Eigen::Index n = A.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix A2 = A * A;
  const CMatrix A4 = A2 * A2;
  const CMatrix A6 = A4 * A2;
  const CMatrix U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
                         b[3] * A2 + b[1] * I);
  const CMatrix V =
      A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  return (V - U).partialPivLu().solve(V + U);
}

}  // namespace

CMatrix expm(const CMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidArgument("expm: matrix is not square");
  if (!A.allFinite()) throw InvalidArgument("expm: matrix has non-finite entries");
  const double nrm = norm1(A);
  static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr std::array<double, 8> b7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                               25200.0,    1512.0,    56.0,      1.0};
  static constexpr std::array<double, 10> b9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                                302702400.0,   30270240.0,   2162160.0,
                                                110880.0,      3960.0,       90.0,
                                                1.0};
  if (nrm <= 1.495585217958292e-2) return pade(A, b3);
  if (nrm <= 2.539398330063230e-1) return pade(A, b5);
  if (nrm <= 9.504178996162932e-1) return pade(A, b7);
  if (nrm <= 2.097847961257068e0) return pade(A, b9);
  constexpr double theta13 = 5.371920351148152;
  int s = 0;
  if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  CMatrix X = pade13(A / std::ldexp(1.0, s));
  for (int i = 0; i < s; ++i) X = (X * X).eval();
  return X;
}

CMatrix expm(const CMatrix& A, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("expm: non-finite time");
  // ||e^{At}|| <= e^{t * lambda_max((A + A^dagger) / 2)} for t >= 0.
  const CMatrix herm = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  const double growth = t >= 0 ? es.eigenvalues().maxCoeff() * t : es.eigenvalues().minCoeff() * t;
  if (growth > 700.0) {
    std::ostringstream os;
    os << "expm: growth exponent " << growth << " exceeds the double range (unphysical gain)";
    throw ExponentOverflow(os.str());
  }
  return expm((A * t).eval());
}

CVector expm_action(const CMatrix& A, const CVector& v, double t) {
  if (A.cols() != v.size()) throw InvalidArgument("expm_action: dimension mismatch");
  return expm(A, t) * v;
}

}  // namespace stark
