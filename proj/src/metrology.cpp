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

#include "stark/metrology.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <sstream>

#include "stark/errors.hpp"

namespace stark::metrology {

namespace {

double clamp_fisher(double value, const char* who) {
  if (!std::isfinite(value)) throw NumericalError(std::string(who) + ": non-finite Fisher information");
  if (value >= 0.0) return value;
  if (value > -kNegativeClamp) return 0.0;
  std::ostringstream os;
  os << who << ": Fisher information " << value << " is negative beyond the clamp window";
  throw NegativeFisher(os.str());
}

CVector align_phase(const CVector& reference, CVector v) {
  const Complex overlap = reference.dot(v);
  if (std::abs(overlap) > 0.0) v *= std::conj(overlap) / std::abs(overlap);
  return v;
}

template <class T, class Eval>
Derivative<T> central(Eval&& eval_pair, double h, const DerivativeOptions& opt) {
  const double delta = opt.step > 0.0 ? opt.step : default_step(h);
  auto diff = [&](double d) -> std::pair<T, T> { return eval_pair(d); };
  auto [value, d1] = diff(delta);
  Derivative<T> out{std::move(value), std::move(d1), delta, 0.0};
  if (!opt.richardson) return out;
  auto [unused, d2] = diff(0.5 * delta);
  (void)unused;
  out.richardson_disagreement = eval_pair.disagreement(out.derivative, d2);
  if (out.richardson_disagreement > opt.richardson_tolerance) {
    std::ostringstream os;
    os << "state_derivative: Richardson estimates disagree by " << out.richardson_disagreement
       << " (relative) at h = " << h;
    throw StepCollapse(os.str());
  }
  out.derivative = eval_pair.extrapolate(out.derivative, d2);
  return out;
}

template <class V>
double rel_gap(const V& a, const V& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

template <class V>
double rel_gap(const std::vector<V>& a, const std::vector<V>& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]).squaredNorm();
    scale += b[i].squaredNorm();
  }
  return std::sqrt(diff) / std::max(std::sqrt(scale), 1e-300);
}

template <class V>
V richardson(const V& coarse, const V& fine) {
  return fine + (fine - coarse) / 3.0;
}

template <class V>
std::vector<V> richardson(const std::vector<V>& coarse, const std::vector<V>& fine) {
  std::vector<V> out;
  out.reserve(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) out.push_back(richardson(coarse[i], fine[i]));
  return out;
}

template <class Fn>
auto plus_minus(const Fn& fn, double h, double d, bool parallel) {
  if (parallel) {
    auto plus = std::async(std::launch::async, [&] { return fn(h + d); });
    auto minus = fn(h - d);
    return std::make_pair(plus.get(), std::move(minus));
  }
  auto plus = fn(h + d);
  auto minus = fn(h - d);
  return std::make_pair(std::move(plus), std::move(minus));
}

template <class T, class Fn, class Diff>
struct PairEval {
  const Fn& fn;
  double h;
  bool parallel;
  Diff differ;
  std::optional<T> centre;

  std::pair<T, T> operator()(double d) {
    if (!centre) centre = fn(h);
    auto [plus, minus] = plus_minus(fn, h, d, parallel);
    return {*centre, differ(*centre, plus, minus, d)};
  }
  double disagreement(const T& a, const T& b) const { return rel_gap(a, b); }
  T extrapolate(const T& a, const T& b) const { return richardson(a, b); }
};

struct PureDiff {
  CVector operator()(const CVector& c, const CVector& p, const CVector& m, double d) const {
    return (align_phase(c, p) - align_phase(c, m)) / (2.0 * d);
  }
  std::vector<CVector> operator()(const std::vector<CVector>& c, const std::vector<CVector>& p,
                                  const std::vector<CVector>& m, double d) const {
    std::vector<CVector> out;
    out.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back((*this)(c[i], p[i], m[i], d));
    return out;
  }
};

struct DensityDiff {
  CMatrix operator()(const CMatrix&, const CMatrix& p, const CMatrix& m, double d) const {
    return (p - m) / (2.0 * d);
  }
  std::vector<CMatrix> operator()(const std::vector<CMatrix>& c, const std::vector<CMatrix>& p,
                                  const std::vector<CMatrix>& m, double d) const {
    std::vector<CMatrix> out;
    out.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back((*this)(c[i], p[i], m[i], d));
    return out;
  }
};

template <class T, class Fn, class Diff>
Derivative<T> run(const Fn& fn, double h, const DerivativeOptions& opt) {
  PairEval<T, Fn, Diff> eval{fn, h, opt.parallel, Diff{}, std::nullopt};
  return central<T>(eval, h, opt);
}

}  // namespace

FisherResult qfi_pure(const CVector& psi, const CVector& dpsi) {
  if (psi.size() != dpsi.size()) throw InvalidArgument("qfi_pure: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-8) throw InvalidArgument("qfi_pure: psi is not normalized");
  const double value = 4.0 * (dpsi.squaredNorm() - std::norm(dpsi.dot(psi)));
  FisherResult r;
  r.value = clamp_fisher(value, "qfi_pure");
  r.method = FisherMethod::Pure;
  return r;
}

SldResult qfi_mixed(const CMatrix& rho, const CMatrix& drho, double pair_threshold) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) throw InvalidArgument("qfi_mixed: dimension mismatch");
  if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, drho.cwiseAbs().maxCoeff()))
    throw InvalidArgument("qfi_mixed: drho is not Hermitian");
  if (std::abs(drho.trace()) > 1e-8 * std::max(1.0, drho.cwiseAbs().maxCoeff()))
    throw InvalidArgument("qfi_mixed: drho is not traceless");

  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  const RVector& p = es.eigenvalues();
  const CMatrix& U = es.eigenvectors();
  const CMatrix D = U.adjoint() * drho * U;
  const Eigen::Index n = rho.rows();

  CMatrix sld_eig = CMatrix::Zero(n, n);
  double value = 0.0;
  long long skipped = 0;
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      const double s = p(a) + p(b);
      if (s > pair_threshold) {
        sld_eig(a, b) = 2.0 * D(a, b) / s;
        value += 2.0 * std::norm(D(a, b)) / s;
      } else {
        ++skipped;
      }
    }
  }
  SldResult out;
  out.sld = U * sld_eig * U.adjoint();
  out.fisher.value = clamp_fisher(value, "qfi_mixed");
  out.fisher.method = FisherMethod::Sld;
  out.fisher.discarded_weight_fraction = static_cast<double>(skipped) / static_cast<double>(n * n);
  if (out.fisher.discarded_weight_fraction > kRankDeficiencyFlag) out.fisher.condition_flags.push_back("rank_deficient");
  return out;
}

CfiResult cfi(const std::vector<double>& p, const std::vector<double>& dp, double threshold) {
  if (p.size() != dp.size()) throw InvalidArgument("cfi: size mismatch");
  double ps = 0.0;
  double ds = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ps += p[i];
    ds += dp[i];
  }
  if (std::abs(ps - 1.0) > 1e-8) throw InvalidArgument("cfi: probabilities do not sum to 1");
  if (std::abs(ds) > 1e-8) throw InvalidArgument("cfi: derivatives do not sum to 0");
  CfiResult r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > threshold) {
      r.value += dp[i] * dp[i] / p[i];
    } else if (std::abs(dp[i]) > 0.0 && std::abs(dp[i]) > std::sqrt(threshold)) {
      r.singular = true;
    }
  }
  if (r.singular) r.value = std::numeric_limits<double>::infinity();
  return r;
}

void site_distribution(const CVector& psi, const CVector& dpsi, std::vector<double>& p, std::vector<double>& dp) {
  p.resize(psi.size());
  dp.resize(psi.size());
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    p[j] = std::norm(psi(j));
    dp[j] = 2.0 * (std::conj(psi(j)) * dpsi(j)).real();
  }
}

double default_step(double h) { return std::max(1e-6, 1e-4 * std::abs(h)); }

Derivative<CVector> state_derivative(const PureFactory& evolve, double h, const DerivativeOptions& opt) {
  return run<CVector, PureFactory, PureDiff>(evolve, h, opt);
}

Derivative<std::vector<CVector>> state_derivative(const PureSeriesFactory& evolve, double h,
                                                  const DerivativeOptions& opt) {
  return run<std::vector<CVector>, PureSeriesFactory, PureDiff>(evolve, h, opt);
}

Derivative<CMatrix> density_derivative(const DensityFactory& evolve, double h, const DerivativeOptions& opt) {
  return run<CMatrix, DensityFactory, DensityDiff>(evolve, h, opt);
}

Derivative<std::vector<CMatrix>> density_derivative(const DensitySeriesFactory& evolve, double h,
                                                    const DerivativeOptions& opt) {
  return run<std::vector<CMatrix>, DensitySeriesFactory, DensityDiff>(evolve, h, opt);
}

double snr(double h, double repetitions, double fq) {
  if (h < 0.0 || repetitions < 0.0 || fq < 0.0) throw InvalidArgument("snr: inputs must be >= 0");
  return h * std::sqrt(repetitions * fq);
}

}  // namespace stark::metrology
