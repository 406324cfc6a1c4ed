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

// Monte Carlo wave-function unraveling of the dephasing master equation.

#include <cstdint>
#include <vector>

#include "stark/rng.hpp"
#include "stark/types.hpp"

namespace stark::trajectory {

struct TrajectoryConfig {
  double dt = 0.01;
  double t_final = 1.0;
  int n_traj = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  // Use Delta p = gamma dt sum_j <n_j^dagger n_j> instead of the exact norm
  // loss of the no-jump step.
  bool first_order_jump_probability = false;

  // Throws InvalidArgument if dt <= 0, n_traj < 1, or the largest expected
  // jump probability per step, dt * ||sum_j L_j^dagger L_j||, is >= 0.1.
  void validate(const std::vector<OperatorMatrix>& jump_ops) const;
};

// Jump operators already scaled by sqrt(gamma): L_j = sqrt(gamma) n_j.
std::vector<OperatorMatrix> scaled_dephasing_jumps(const LatticeSpec& spec);

// Precomputed e^{-i H_eff dt} plus the jump set for repeated steps.
class Stepper {
 public:
  Stepper(const OperatorMatrix& H_eff, std::vector<OperatorMatrix> jumps, double dt,
          bool first_order_jump_probability = false);

  struct Outcome {
    bool jumped = false;
    int channel = -1;
    double jump_probability = 0.0;
  };

  // Advances psi in place by one step. Throws NormCollapse if the
  // pre-normalization norm falls below 1e-12.
  Outcome step(CVector& psi, CounterRng& rng) const;

  double dt() const { return dt_; }

 private:
  CMatrix propagator_;
  std::vector<OperatorMatrix> jumps_;
  std::vector<bool> diagonal_;
  double dt_;
  bool first_order_;
};

// One step from scratch (builds the propagator). Convenience for tests.
CVector step(const CVector& psi, const OperatorMatrix& H_eff, const std::vector<OperatorMatrix>& jumps,
             double dt, CounterRng& rng);

struct EnsembleResult {
  std::vector<DensityMatrix> mean;
  // Per requested time, the largest standard error over site populations.
  std::vector<double> population_stderr;
  long long total_jumps = 0;
};

// (1/N) sum_k |psi_k(t)><psi_k(t)| at each time. Times must lie on the dt
// grid. Trajectory k draws from CounterRng(seed, k); per-chunk partial sums
// are reduced in fixed order so results do not depend on cfg.threads.
EnsembleResult run_ensemble(const CVector& psi0, const LatticeSpec& spec, const TrajectoryConfig& cfg,
                            const std::vector<double>& times);

// ||e^{-i H_eff t} psi0||^2
double no_jump_probability(const CVector& psi0, const OperatorMatrix& H_eff, double t);

// e^{-i H_eff t} psi0 / sqrt(p(t))
CVector no_jump_state(const CVector& psi0, const OperatorMatrix& H_eff, double t);

}  // namespace stark::trajectory
