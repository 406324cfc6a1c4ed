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

#include "stark/trajectory.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "stark/errors.hpp"
#include "stark/expm.hpp"
#include "stark/model.hpp"
#include "stark/simd/kernels.hpp"

namespace stark::trajectory {

namespace {
constexpr double kCollapseNorm = 1e-12;
constexpr int kChunk = 32;

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex{}) return false;
  return true;
}
}  // namespace

void TrajectoryConfig::validate(const std::vector<OperatorMatrix>& jump_ops) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("TrajectoryConfig: dt must be > 0");
  if (!(t_final >= 0.0)) throw InvalidArgument("TrajectoryConfig: t_final must be >= 0");
  if (n_traj < 1) throw InvalidArgument("TrajectoryConfig: n_traj must be >= 1");
  if (threads < 1) throw InvalidArgument("TrajectoryConfig: threads must be >= 1");
  if (jump_ops.empty()) return;
  const Eigen::Index n = jump_ops.front().dim();
  CMatrix total = CMatrix::Zero(n, n);
  for (const auto& op : jump_ops) total += op.m.adjoint() * op.m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(total, Eigen::EigenvaluesOnly);
  const double worst = dt * es.eigenvalues().maxCoeff();
  if (worst >= 0.1) {
    std::ostringstream os;
    os << "TrajectoryConfig: expected jump probability per step " << worst << " >= 0.1; reduce dt";
    throw InvalidArgument(os.str());
  }
}

std::vector<OperatorMatrix> scaled_dephasing_jumps(const LatticeSpec& spec) {
  auto ops = model::build_dephasing_ops(spec);
  const double s = std::sqrt(spec.gamma);
  for (auto& op : ops) op.m *= s;
  return ops;
}

Stepper::Stepper(const OperatorMatrix& H_eff, std::vector<OperatorMatrix> jumps, double dt,
                 bool first_order_jump_probability)
    : propagator_(expm(-kI * H_eff.m, dt)), jumps_(std::move(jumps)), dt_(dt),
      first_order_(first_order_jump_probability) {
  diagonal_.reserve(jumps_.size());
  for (const auto& j : jumps_) {
    if (j.dim() != H_eff.dim()) throw InvalidArgument("Stepper: jump operator dimension mismatch");
    diagonal_.push_back(is_diagonal(j.m));
  }
}

Stepper::Outcome Stepper::step(CVector& psi, CounterRng& rng) const {
  const auto& k = simd::active();
  const auto n = static_cast<std::size_t>(psi.size());
  CVector phi(psi.size());
  k.gemv(propagator_.data(), n, n, psi.data(), phi.data());
  const double kept = k.norm2(phi.data(), n);

  std::vector<double> weights(jumps_.size(), 0.0);
  double total = 0.0;
  auto fill_weights = [&] {
    for (std::size_t c = 0; c < jumps_.size(); ++c) {
      if (diagonal_[c]) {
        double w = 0.0;
        const auto d = jumps_[c].m.diagonal();
        for (Eigen::Index i = 0; i < psi.size(); ++i) w += std::norm(d(i) * psi(i));
        weights[c] = w;
      } else {
        weights[c] = (jumps_[c].m * psi).squaredNorm();
      }
      total += weights[c];
    }
  };

  Outcome out;
  double dp = 1.0 - kept;
  if (first_order_) {
    fill_weights();
    dp = dt_ * total;
  }
  out.jump_probability = dp;

  if (rng.uniform() >= dp) {
    if (kept < kCollapseNorm * kCollapseNorm) throw NormCollapse("trajectory step: no-jump norm collapsed");
    psi = phi / std::sqrt(kept);
    return out;
  }

  if (!first_order_) fill_weights();
  if (!(total > 0.0)) {
    // Norm loss without any jump weight: only possible for non-dissipative
    // residue at rounding level; keep the no-jump branch.
    psi = phi / std::sqrt(kept);
    return out;
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t chosen = jumps_.size();
  for (std::size_t c = 0; c < jumps_.size(); ++c) {
    if (weights[c] == 0.0) continue;
    acc += weights[c];
    chosen = c;
    if (u < acc) break;
  }
  CVector jumped = jumps_[chosen].m * psi;
  const double nrm = jumped.norm();
  if (nrm < kCollapseNorm) throw NormCollapse("trajectory step: jumped state norm collapsed");
  psi = jumped / nrm;
  out.jumped = true;
  out.channel = static_cast<int>(chosen);
  return out;
}

CVector step(const CVector& psi, const OperatorMatrix& H_eff, const std::vector<OperatorMatrix>& jumps,
             double dt, CounterRng& rng) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw InvalidArgument("trajectory step: psi is not normalized");
  Stepper s(H_eff, jumps, dt);
  CVector out = psi;
  s.step(out, rng);
  return out;
}

namespace {

struct ChunkSums {
  std::vector<CMatrix> rho;
  std::vector<RVector> pop;
  std::vector<RVector> pop_sq;
  long long jumps = 0;
};

}  // namespace

EnsembleResult run_ensemble(const CVector& psi0, const LatticeSpec& spec, const TrajectoryConfig& cfg,
                            const std::vector<double>& times) {
  spec.validate();
  const auto jumps = scaled_dephasing_jumps(spec);
  cfg.validate(jumps);
  if (psi0.size() != spec.L) throw InvalidArgument("run_ensemble: state dimension does not match L");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw InvalidArgument("run_ensemble: psi0 is not normalized");

  std::vector<long long> marks;
  for (double t : times) {
    const double m = std::round(t / cfg.dt);
    if (std::abs(m * cfg.dt - t) > 1e-9 * std::max(1.0, std::abs(t)) || m < 0) {
      std::ostringstream os;
      os << "run_ensemble: time " << t << " is not on the dt grid";
      throw InvalidArgument(os.str());
    }
    if (!marks.empty() && static_cast<long long>(m) < marks.back())
      throw InvalidArgument("run_ensemble: times must be ascending");
    marks.push_back(static_cast<long long>(m));
  }

  const Stepper stepper(model::build_effective_dephasing(spec), jumps, cfg.dt,
                        cfg.first_order_jump_probability);
  const Eigen::Index L = spec.L;
  const int n_chunks = (cfg.n_traj + kChunk - 1) / kChunk;
  std::vector<ChunkSums> chunks(n_chunks);
  std::vector<std::string> failures(n_chunks);

  auto run_chunk = [&](int c) {
    ChunkSums& s = chunks[c];
    s.rho.assign(times.size(), CMatrix::Zero(L, L));
    s.pop.assign(times.size(), RVector::Zero(L));
    s.pop_sq.assign(times.size(), RVector::Zero(L));
    const auto& k = simd::active();
    const int first = c * kChunk;
    const int last = std::min(cfg.n_traj, first + kChunk);
    for (int traj = first; traj < last; ++traj) {
      CounterRng rng(cfg.seed, static_cast<std::uint64_t>(traj));
      CVector psi = psi0;
      long long at = 0;
      for (std::size_t ti = 0; ti < marks.size(); ++ti) {
        for (; at < marks[ti]; ++at) {
          try {
            if (stepper.step(psi, rng).jumped) ++s.jumps;
          } catch (const NormCollapse& e) {
            std::ostringstream os;
            os << e.what() << " (trajectory " << traj << ")";
            throw NormCollapse(os.str());
          }
        }
        k.rank1_update(1.0, psi.data(), static_cast<std::size_t>(L), s.rho[ti].data());
        const RVector p = psi.cwiseAbs2();
        s.pop[ti] += p;
        s.pop_sq[ti] += p.cwiseAbs2();
      }
    }
  };

  const int threads = std::max(1, std::min(cfg.threads, n_chunks));
  if (threads == 1) {
    for (int c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int c = next++; c < n_chunks; c = next++) {
          try {
            run_chunk(c);
          } catch (const std::exception& e) {
            failures[c] = e.what();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& f : failures)
      if (!f.empty()) throw NormCollapse(f);
  }

  EnsembleResult res;
  const double inv_n = 1.0 / cfg.n_traj;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    CMatrix rho = CMatrix::Zero(L, L);
    RVector pop = RVector::Zero(L);
    RVector pop_sq = RVector::Zero(L);
    for (const auto& s : chunks) {
      rho += s.rho[ti];
      pop += s.pop[ti];
      pop_sq += s.pop_sq[ti];
    }
    DensityMatrix mean(rho * inv_n);
    mean.symmetrize();
    res.mean.push_back(std::move(mean));
    const RVector m = pop * inv_n;
    const RVector var = (pop_sq * inv_n - m.cwiseAbs2()).cwiseMax(0.0);
    res.population_stderr.push_back(std::sqrt(var.maxCoeff() / std::max(1, cfg.n_traj - 1)));
  }
  for (const auto& s : chunks) res.total_jumps += s.jumps;
  return res;
}

double no_jump_probability(const CVector& psi0, const OperatorMatrix& H_eff, double t) {
  if (std::abs(psi0.norm() - 1.0) > 1e-8) throw InvalidArgument("no_jump_probability: psi0 is not normalized");
  const double p = expm_action(-kI * H_eff.m, psi0, t).squaredNorm();
  return std::clamp(p, 0.0, 1.0);
}

CVector no_jump_state(const CVector& psi0, const OperatorMatrix& H_eff, double t) {
  const CVector phi = expm_action(-kI * H_eff.m, psi0, t);
  const double nrm = phi.norm();
  if (nrm < kCollapseNorm) throw NormCollapse("no_jump_state: norm collapsed");
  return phi / nrm;
}

}  // namespace stark::trajectory
