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

// Norm-preserving evolution under a non-Hermitian Hamiltonian,
//   |psi(t)> = e^{-iHt}|psi0> / ||e^{-iHt}|psi0>||,
// and the equivalent nonlinear master equation for rho.

#include <optional>
#include <vector>

#include "stark/spectral.hpp"
#include "stark/types.hpp"

namespace stark::nh {

enum class Route { Spectral, Exponential };

// Holds one decomposition of H and reuses it for every requested time. When H
// is too close to an exceptional point the spectral route is unavailable and
// the evolver falls back to dense exponentials.
class Evolver {
 public:
  explicit Evolver(OperatorMatrix H, Route preferred = Route::Spectral);

  Route route() const { return route_; }
  // True when the spectral route was requested but refused.
  bool fell_back() const { return fell_back_; }
  const std::optional<spectral::BiorthogonalSystem>& system() const { return system_; }

  CVector evolve(const CVector& psi0, double t) const;

  // States at ascending times. On the exponential route one propagator is
  // built per distinct time gap and applied in sequence.
  std::vector<CVector> evolve_series(const CVector& psi0, const std::vector<double>& times) const;

 private:
  CVector spectral_evolve(const CVector& coeffs, double t) const;

  OperatorMatrix H_;
  Route route_;
  bool fell_back_ = false;
  std::optional<spectral::BiorthogonalSystem> system_;
};

// Sum_n e^{-i E_n t} <L_n|psi0> |R_n>, normalized.
CVector evolve_nh(const CVector& psi0, const OperatorMatrix& H, double t);

// Same state through e^{-iHt} psi0 directly.
CVector evolve_nh_exponential(const CVector& psi0, const OperatorMatrix& H, double t);

// Closed-form propagation under the unidirectional lattice. The diagonal is
// evenly spaced, so (e^{-iHt})_{jk} = e^{-i h j t} z^{k-j} / (k-j)! with
// z = J (e^{-iht} - 1) / h. Terms are summed with a common log-scale, which
// avoids the cancellation the dense routes suffer when ||e^{-iHt}|| is large.
CVector evolve_unidirectional(const CVector& psi0, const LatticeSpec& spec, double t);

// -i [H_h, rho] + gamma (2 Tr(rho H_ah) rho - H_ah rho - rho H_ah)
CMatrix trace_preserving_rhs(const CMatrix& rho, const OperatorMatrix& H_h, const OperatorMatrix& H_ah,
                             double gamma);

// e^{-iHt} rho0 e^{iH^dagger t} / Tr(...). Throws TraceCollapse when the
// unnormalized trace is below 1e-300.
DensityMatrix evolve_nh_density(const DensityMatrix& rho0, const OperatorMatrix& H, double t);

// psi_j proportional to exp(-(j - L/2)^2 / (2 sigma^2)) over sites j = 1..L.
CVector gaussian_packet(int L, double sigma);

// |site>, 0-based.
CVector site_state(int L, int site);

}  // namespace stark::nh
