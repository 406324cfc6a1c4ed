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

// End-to-end Fisher-information pipelines for each probe family. Every
// pipeline differentiates the full evolution with respect to h by central
// differences and evaluates the QFI at each requested time.

#include <string>
#include <vector>

#include "stark/lindblad.hpp"
#include "stark/metrology.hpp"
#include "stark/model.hpp"
#include "stark/nh_dynamics.hpp"

namespace stark::probes {

struct QfiSeries {
  std::vector<double> times;
  std::vector<double> fq;
  double derivative_step = 0.0;
  // Largest SLD discarded-weight fraction seen (mixed-state pipelines).
  double max_discarded_fraction = 0.0;
  // Human-readable notes: route fallbacks, rank deficiency, ...
  std::vector<std::string> notes;
};

// Dephasing master-equation probe started from |ceil(L/2)>.
QfiSeries lindblad_qfi(const LatticeSpec& spec, const std::vector<double>& times,
                       const metrology::DerivativeOptions& opt = {},
                       lindblad::Method method = lindblad::Method::Structured);

// Closed-system Stark probe from |ceil(L/2)> through the Hermitian
// eigenbasis; the gamma = 0 reference for the Lindblad pipeline.
QfiSeries unitary_qfi(const LatticeSpec& spec, const std::vector<double>& times,
                      const metrology::DerivativeOptions& opt = {});

// Condition number above which the dynamic pipelines prefer the exponential
// route: finite differences amplify eigenvector error by 1/delta.
inline constexpr double kSpectralRouteCondition = 1e6;

// Norm-preserving non-Hermitian evolution of psi0 under the given family.
QfiSeries nh_qfi(model::Family family, const LatticeSpec& spec, const CVector& psi0,
                 const std::vector<double>& times, const metrology::DerivativeOptions& opt = {});

// QFI of the k-th eigenstate (sorted by real energy, 0 = lowest) of a
// static Hamiltonian. The unidirectional family uses the closed-form vectors.
double eigenstate_qfi(model::Family family, const LatticeSpec& spec, int index,
                      const metrology::DerivativeOptions& opt = {});

// F^Q / t^2 for t > 0; entries at t = 0 are dropped from both vectors.
void over_t2(const QfiSeries& s, std::vector<double>& times, std::vector<double>& values);

// times = {step, 2 step, ..., count * step}
std::vector<double> uniform_times(double step, int count);

}  // namespace stark::probes
