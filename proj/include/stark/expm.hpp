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

// Matrix exponentials: dense scaling-and-squaring for small operators and a
// truncated-Taylor action for operators that are only available as a
// matrix-free apply.

#include <algorithm>
#include <cmath>
#include <limits>

#include "stark/types.hpp"

namespace stark {

// e^{A} by Pade scaling and squaring (degrees 3..13, Higham's thresholds).
CMatrix expm(const CMatrix& A);

// e^{A t} with an overflow guard: throws ExponentOverflow when the
// logarithmic norm of A times t exceeds the double exponent range.
CMatrix expm(const CMatrix& A, double t);

// e^{A t} v via the dense exponential.
CVector expm_action(const CMatrix& A, const CVector& v, double t);

// Action e^{t (A + shift I)} X for a matrix-free A acting on X (vector or
// matrix). `norm_bound` must bound the induced 1-norm of A; the integration
// is split into substeps with norm_bound * tau <= kTaylorStepNorm and each
// substep sums the Taylor series until two consecutive terms fall below
// double precision.
inline constexpr double kTaylorStepNorm = 4.0;

template <class X, class Apply>
X taylor_action(Apply&& apply, double norm_bound, Complex shift, X x, double t) {
  if (t == 0.0) return x;
  const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound * std::abs(t) / kTaylorStepNorm)));
  const double tau = t / steps;
  const Complex step_scale = std::exp(shift * tau);
  constexpr double tol = 1.1102230246251565e-16;
  constexpr int max_terms = 80;
  X term;
  for (int s = 0; s < steps; ++s) {
    X acc = x;
    term = x;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_terms; ++k) {
      term = apply(term);
      term *= Complex(tau / k);
      acc += term;
      const double tn = term.cwiseAbs().maxCoeff();
      const double an = acc.cwiseAbs().maxCoeff();
      if (tn <= tol * an && prev <= tol * an) break;
      prev = tn;
    }
    x = step_scale * acc;
  }
  return x;
}

}  // namespace stark
