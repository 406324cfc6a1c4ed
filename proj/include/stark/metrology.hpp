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

// Fisher information with respect to a single parameter.

#include <functional>
#include <string>
#include <vector>

#include "stark/types.hpp"

namespace stark::metrology {

enum class FisherMethod { Pure, Sld };

struct FisherResult {
  double value = 0.0;
  FisherMethod method = FisherMethod::Pure;
  double derivative_step = 0.0;
  // Fraction of (m, n) eigenpair weight skipped by the SLD threshold.
  double discarded_weight_fraction = 0.0;
  std::vector<std::string> condition_flags;
};

inline constexpr double kNegativeClamp = 1e-10;
inline constexpr double kSldPairThreshold = 1e-12;
inline constexpr double kRankDeficiencyFlag = 0.2;

// 4 (<dpsi|dpsi> - |<dpsi|psi>|^2). Rejects |psi| deviating from 1 by more
// than 1e-8. Values in (-1e-10, 0) clamp to 0; anything more negative throws
// NegativeFisher.
FisherResult qfi_pure(const CVector& psi, const CVector& dpsi);

struct SldResult {
  FisherResult fisher;
  CMatrix sld;
};

// Eigendecomposes rho and sums 2 |<m|drho|n>|^2 / (p_m + p_n) over pairs with
// p_m + p_n above the threshold. Flags "rank_deficient" when more than 20% of
// the pairs are skipped.
SldResult qfi_mixed(const CMatrix& rho, const CMatrix& drho, double pair_threshold = kSldPairThreshold);

struct CfiResult {
  double value = 0.0;
  // An outcome with zero probability but non-zero derivative was seen; value
  // is +infinity.
  bool singular = false;
};

CfiResult cfi(const std::vector<double>& p, const std::vector<double>& dp, double threshold = 1e-14);

// Site-occupation probabilities |psi_j|^2 and their derivative.
void site_distribution(const CVector& psi, const CVector& dpsi, std::vector<double>& p, std::vector<double>& dp);

struct DerivativeOptions {
  // 0 selects max(1e-6, 1e-4 |h|).
  double step = 0.0;
  // Combine steps delta and delta/2 as D(d/2) + (D(d/2) - D(d)) / 3.
  bool richardson = false;
  // StepCollapse when the two Richardson estimates differ by more than this.
  double richardson_tolerance = 1e-3;
  // Evaluate the +delta and -delta branches on separate threads.
  bool parallel = false;
};

double default_step(double h);

template <class T>
struct Derivative {
  T value;
  T derivative;
  double step = 0.0;
  double richardson_disagreement = 0.0;
};

using PureFactory = std::function<CVector(double)>;
using PureSeriesFactory = std::function<std::vector<CVector>(double)>;
using DensityFactory = std::function<CMatrix(double)>;
using DensitySeriesFactory = std::function<std::vector<CMatrix>(double)>;

// Central difference of a pure state. Each of psi(h +- delta) is rotated by
// the phase that makes its overlap with psi(h) real positive before
// differencing.
Derivative<CVector> state_derivative(const PureFactory& evolve, double h, const DerivativeOptions& opt = {});
Derivative<std::vector<CVector>> state_derivative(const PureSeriesFactory& evolve, double h,
                                                  const DerivativeOptions& opt = {});

// Entrywise central difference of a density matrix (no gauge step).
Derivative<CMatrix> density_derivative(const DensityFactory& evolve, double h, const DerivativeOptions& opt = {});
Derivative<std::vector<CMatrix>> density_derivative(const DensitySeriesFactory& evolve, double h,
                                                    const DerivativeOptions& opt = {});

// h sqrt(M F^Q)
double snr(double h, double repetitions, double fq);

}  // namespace stark::metrology
