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

#include "stark/lindblad.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "stark/errors.hpp"
#include "stark/expm.hpp"
#include "stark/simd/kernels.hpp"

namespace stark::lindblad {

CVector vectorize(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CVector vectorize(const DensityMatrix& rho) { return vectorize(rho.matrix()); }

DensityMatrix devectorize(const CVector& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size() || n == 0) {
    std::ostringstream os;
    os << "devectorize: length " << v.size() << " is not a perfect square";
    throw InvalidArgument(os.str());
  }
  return DensityMatrix(Eigen::Map<const CMatrix>(v.data(), n, n));
}

Superoperator build_liouvillian(const LatticeSpec& spec) {
  const CMatrix H = model::build_stark(spec).m;
  const Eigen::Index L = H.rows();
  const CMatrix I = CMatrix::Identity(L, L);
  CMatrix gen = -kI * (Eigen::kroneckerProduct(I, H).eval() -
                       Eigen::kroneckerProduct(H.transpose(), I).eval());
  if (spec.gamma != 0.0) {
    for (const auto& n : model::build_dephasing_ops(spec)) {
      const CMatrix ndn = n.m.adjoint() * n.m;
      gen += (0.5 * spec.gamma) *
             (2.0 * Eigen::kroneckerProduct(n.m.conjugate(), n.m).eval() -
              Eigen::kroneckerProduct(I, ndn).eval() -
              Eigen::kroneckerProduct(ndn.transpose(), I).eval());
    }
  }
  return {std::move(gen)};
}

DephasingGenerator::DephasingGenerator(const LatticeSpec& spec)
    : bands_(model::tridiagonal_bands(model::build_stark(spec).m)), gamma_(spec.gamma) {
  const std::size_t n = bands_.diag.size();
  Complex mean{};
  for (const auto& d : bands_.diag) mean += d;
  mean /= static_cast<double>(n);
  for (auto& d : bands_.diag) d -= mean;
  // Off-diagonal coherences decay at gamma; centre the decay spectrum.
  shift_ = -0.5 * gamma_;
  double h_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = std::abs(bands_.diag[j]);
    if (j > 0) col += std::abs(bands_.upper[j - 1]);
    if (j + 1 < n) col += std::abs(bands_.lower[j]);
    h_norm = std::max(h_norm, col);
  }
  norm_bound_ = 2.0 * h_norm + 0.5 * gamma_;
}

CMatrix DephasingGenerator::apply(const CMatrix& rho) const {
  const std::size_t n = bands_.diag.size();
  CMatrix out(rho.rows(), rho.cols());
  simd::active().dephasing_apply(bands_.diag.data(), bands_.upper.data(), bands_.lower.data(),
                                 gamma_, rho.data(), out.data(), n);
  return out;
}

CMatrix DephasingGenerator::evolve(const CMatrix& rho, double t) const {
  const double shift = shift_;
  auto shifted = [this, shift](const CMatrix& x) -> CMatrix {
    CMatrix y = apply(x);
    y -= shift * x;
    return y;
  };
  return taylor_action(shifted, norm_bound_, Complex(shift_), rho, t);
}

namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) return;
  if (!(times.front() >= 0.0)) throw InvalidArgument("propagate: times[0] must be >= 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] >= times[k - 1])) throw InvalidArgument("propagate: times must be ascending");
  }
}

DensityMatrix finish(CMatrix rho, double t) {
  DensityMatrix out(std::move(rho));
  out.symmetrize();
  const double lo = out.min_eigenvalue();
  if (lo < -kPositivityTolerance) {
    std::ostringstream os;
    os << "propagate: smallest eigenvalue " << lo << " at t = " << t;
    throw PositivityLoss(os.str());
  }
  const Complex tr = out.trace();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "propagate: trace drifted to " << tr << " at t = " << t;
    throw InvariantViolation(os.str());
  }
  return out;
}

}  // namespace

std::vector<DensityMatrix> propagate(const DensityMatrix& rho0, const LatticeSpec& spec,
                                     const std::vector<double>& times, Method method) {
  spec.validate();
  check_times(times);
  if (rho0.dim() != spec.L) throw InvalidArgument("propagate: state dimension does not match L");

  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  double now = 0.0;

  if (method == Method::Structured) {
    const DephasingGenerator gen(spec);
    CMatrix rho = rho0.matrix();
    for (double t : times) {
      rho = gen.evolve(rho, t - now);
      now = t;
      out.push_back(finish(rho, t));
    }
    return out;
  }

  const Superoperator liou = build_liouvillian(spec);
  std::map<double, CMatrix> cache;
  CVector v = vectorize(rho0);
  for (double t : times) {
    const double gap = t - now;
    if (gap != 0.0) {
      // k*step grids give gaps that differ in the last few bits
      auto it = cache.lower_bound(gap * (1.0 - 1e-12));
      if (it == cache.end() || std::abs(it->first - gap) > 1e-12 * std::abs(gap))
        it = cache.emplace(gap, expm(liou.m, gap)).first;
      v = it->second * v;
    }
    now = t;
    out.push_back(finish(devectorize(v).matrix(), t));
  }
  return out;
}

int middle_site(int L) { return (L + 1) / 2 - 1; }

}  // namespace stark::lindblad
