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

#include "stark/nh_dynamics.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "stark/errors.hpp"
#include "stark/expm.hpp"

namespace stark::nh {

namespace {

void check_unit(const CVector& psi, const char* who) {
  if (std::abs(psi.norm() - 1.0) > 1e-8) throw InvalidArgument(std::string(who) + ": state is not normalized");
}

CVector normalized(CVector v, const char* who) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NormCollapse(std::string(who) + ": state norm collapsed");
  return v / n;
}

}  // namespace

Evolver::Evolver(OperatorMatrix H, Route preferred) : H_(std::move(H)), route_(preferred) {
  if (route_ == Route::Spectral) {
    try {
      system_ = spectral::eig_biorthogonal(H_);
    } catch (const ExceptionalPointProximity&) {
      route_ = Route::Exponential;
      fell_back_ = true;
    }
  }
}

CVector Evolver::spectral_evolve(const CVector& coeffs, double t) const {
  const auto& sys = *system_;
  // Factor out the fastest-growing mode so gain does not overflow.
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < sys.values.size(); ++n) top = std::max(top, sys.values(n).imag() * t);
  CVector weights(coeffs.size());
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
    const Complex e = sys.values(n);
    weights(n) = coeffs(n) * std::exp(Complex(e.imag() * t - top, -e.real() * t));
  }
  return normalized(sys.right * weights, "evolve_nh");
}

CVector Evolver::evolve(const CVector& psi0, double t) const {
  check_unit(psi0, "evolve_nh");
  if (route_ == Route::Spectral) return spectral_evolve(system_->left.adjoint() * psi0, t);
  return normalized(expm(-kI * H_.m, t) * psi0, "evolve_nh");
}

std::vector<CVector> Evolver::evolve_series(const CVector& psi0, const std::vector<double>& times) const {
  check_unit(psi0, "evolve_nh");
  std::vector<CVector> out;
  out.reserve(times.size());
  if (route_ == Route::Spectral) {
    const CVector coeffs = system_->left.adjoint() * psi0;
    for (double t : times) out.push_back(spectral_evolve(coeffs, t));
    return out;
  }
  std::map<double, CMatrix> cache;
  CVector psi = psi0;
  double now = 0.0;
  for (double t : times) {
    if (t < now) throw InvalidArgument("evolve_series: times must be ascending");
    const double gap = t - now;
    if (gap != 0.0) {
      auto it = cache.lower_bound(gap - 1e-12 * std::max(1.0, gap));
      if (it == cache.end() || std::abs(it->first - gap) > 1e-12 * std::max(1.0, gap))
        it = cache.emplace(gap, expm(-kI * H_.m, gap)).first;
      psi = normalized(it->second * psi, "evolve_nh");
    }
    now = t;
    out.push_back(psi);
  }
  return out;
}

CVector evolve_nh(const CVector& psi0, const OperatorMatrix& H, double t) {
  return Evolver(H).evolve(psi0, t);
}

CVector evolve_nh_exponential(const CVector& psi0, const OperatorMatrix& H, double t) {
  return Evolver(H, Route::Exponential).evolve(psi0, t);
}

CMatrix trace_preserving_rhs(const CMatrix& rho, const OperatorMatrix& H_h, const OperatorMatrix& H_ah,
                             double gamma) {
  if (rho.rows() != H_h.dim() || rho.rows() != H_ah.dim())
    throw InvalidArgument("trace_preserving_rhs: dimension mismatch");
  const CMatrix comm = H_h.m * rho - rho * H_h.m;
  const Complex mean = (rho * H_ah.m).trace();
  return -kI * comm + gamma * (2.0 * mean * rho - H_ah.m * rho - rho * H_ah.m);
}

DensityMatrix evolve_nh_density(const DensityMatrix& rho0, const OperatorMatrix& H, double t) {
  const CMatrix U = expm(-kI * H.m, t);
  CMatrix rho = U * rho0.matrix() * U.adjoint();
  const double tr = rho.trace().real();
  if (!(tr >= 1e-300) || !std::isfinite(tr)) throw TraceCollapse("evolve_nh_density: unnormalized trace collapsed");
  DensityMatrix out(rho / tr);
  out.symmetrize();
  return out;
}

CVector evolve_unidirectional(const CVector& psi0, const LatticeSpec& spec, double t) {
  spec.validate();
  const int L = spec.L;
  if (psi0.size() != L) throw InvalidArgument("evolve_unidirectional: state size does not match L");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw InvalidArgument("evolve_unidirectional: psi0 must be normalized");
  // z = -2i J sin(ht/2) e^{-iht/2} / h, with the h -> 0 limit -iJt.
  const double half = 0.5 * spec.h * t;
  const double mag = spec.h == 0.0 ? std::abs(spec.J * t) : std::abs(2.0 * spec.J * std::sin(half) / spec.h);
  double arg = -0.5 * M_PI - half;
  if (spec.h != 0.0 && spec.J * std::sin(half) / spec.h < 0.0) arg += M_PI;
  if (spec.h == 0.0 && spec.J * t < 0.0) arg += M_PI;

  std::vector<double> w(L);  // log |z|^m / m!
  for (int m = 0; m < L; ++m) {
    if (m == 0) w[m] = 0.0;
    else w[m] = mag > 0.0 ? m * std::log(mag) - std::lgamma(m + 1.0) : -std::numeric_limits<double>::infinity();
  }
  std::vector<double> lp(L);
  double shift = -std::numeric_limits<double>::infinity();
  double best_w = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < L; ++k) {
    best_w = std::max(best_w, w[k]);
    lp[k] = std::abs(psi0(k)) > 0.0 ? std::log(std::abs(psi0(k))) : -std::numeric_limits<double>::infinity();
    shift = std::max(shift, lp[k] + best_w);
  }
  CVector out = CVector::Zero(L);
  for (int j = 0; j < L; ++j) {
    Complex acc = 0.0;
    for (int k = j; k < L; ++k) {
      if (!std::isfinite(lp[k])) continue;
      const int m = k - j;
      const double e = w[m] + lp[k] - shift;
      if (e < -745.0) continue;
      acc += std::exp(e) * std::polar(1.0, m * arg + std::arg(psi0(k)));
    }
    out(j) = acc * std::polar(1.0, -spec.h * (j + 1) * t);
  }
  const double n = out.norm();
  if (!(n > 0.0)) throw NormCollapse("evolve_unidirectional: propagated state vanished");
  return out / n;
}

CVector gaussian_packet(int L, double sigma) {
  if (L < 1 || !(sigma > 0.0)) throw InvalidArgument("gaussian_packet: need L >= 1 and sigma > 0");
  CVector psi(L);
  const double centre = 0.5 * L;
  for (int j = 1; j <= L; ++j) {
    const double x = (j - centre) / sigma;
    psi(j - 1) = std::exp(-0.5 * x * x);
  }
  return psi.normalized();
}

CVector site_state(int L, int site) {
  if (site < 0 || site >= L) throw InvalidArgument("site_state: site outside the lattice");
  CVector psi = CVector::Zero(L);
  psi(site) = 1.0;
  return psi;
}

}  // namespace stark::nh
