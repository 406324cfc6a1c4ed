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

#include "stark/probes.hpp"

#include <cmath>
#include <sstream>

#include "stark/errors.hpp"
#include "stark/spectral.hpp"

namespace stark::probes {

namespace {

LatticeSpec with_h(LatticeSpec spec, double h) {
  spec.h = h;
  return spec;
}

}  // namespace

QfiSeries lindblad_qfi(const LatticeSpec& spec, const std::vector<double>& times,
                       const metrology::DerivativeOptions& opt, lindblad::Method method) {
  spec.validate();
  const DensityMatrix rho0 = DensityMatrix::basis(spec.L, lindblad::middle_site(spec.L));
  metrology::DensitySeriesFactory factory = [&](double h) {
    if (h < 0.0) throw InvalidArgument("lindblad_qfi: finite-difference stencil crosses h = 0");
    auto states = lindblad::propagate(rho0, with_h(spec, h), times, method);
    std::vector<CMatrix> out;
    out.reserve(states.size());
    for (auto& st : states) out.push_back(st.matrix() / st.trace().real());
    return out;
  };
  const auto d = metrology::density_derivative(factory, spec.h, opt);
  QfiSeries s;
  s.times = times;
  s.derivative_step = d.step;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto r = metrology::qfi_mixed(d.value[k], d.derivative[k]);
    s.fq.push_back(r.fisher.value);
    s.max_discarded_fraction = std::max(s.max_discarded_fraction, r.fisher.discarded_weight_fraction);
  }
  return s;
}

QfiSeries unitary_qfi(const LatticeSpec& spec, const std::vector<double>& times,
                      const metrology::DerivativeOptions& opt) {
  spec.validate();
  const CVector psi0 = nh::site_state(spec.L, lindblad::middle_site(spec.L));
  metrology::PureSeriesFactory factory = [&](double h) {
    if (h < 0.0) throw InvalidArgument("unitary_qfi: finite-difference stencil crosses h = 0");
    const auto eig = spectral::eig_hermitian(model::build_stark(with_h(spec, h)));
    const CVector c = eig.vectors.adjoint() * psi0;
    std::vector<CVector> out;
    out.reserve(times.size());
    for (double t : times) {
      CVector w(c.size());
      for (Eigen::Index n = 0; n < c.size(); ++n) w(n) = c(n) * std::exp(Complex(0.0, -eig.values(n) * t));
      out.push_back(eig.vectors * w);
    }
    return out;
  };
  const auto d = metrology::state_derivative(factory, spec.h, opt);
  QfiSeries s;
  s.times = times;
  s.derivative_step = d.step;
  for (std::size_t k = 0; k < times.size(); ++k) s.fq.push_back(metrology::qfi_pure(d.value[k], d.derivative[k]).value);
  return s;
}

QfiSeries nh_qfi(model::Family family, const LatticeSpec& spec, const CVector& psi0,
                 const std::vector<double>& times, const metrology::DerivativeOptions& opt) {
  spec.validate();
  bool any_fallback = false;
  bool any_exponential = false;
  metrology::PureSeriesFactory factory = [&](double h) {
    if (h < 0.0) throw InvalidArgument("nh_qfi: finite-difference stencil crosses h = 0");
    if (family == model::Family::Unidirectional) {
      const LatticeSpec s = with_h(spec, h);
      std::vector<CVector> out;
      out.reserve(times.size());
      for (double t : times) out.push_back(nh::evolve_unidirectional(psi0, s, t));
      return out;
    }
    const OperatorMatrix H = model::build(family, with_h(spec, h));
    nh::Evolver ev(H);
    if (ev.fell_back()) any_fallback = true;
    if (ev.route() == nh::Route::Spectral && ev.system()->condition > kSpectralRouteCondition) {
      ev = nh::Evolver(H, nh::Route::Exponential);
    }
    if (ev.route() == nh::Route::Exponential) any_exponential = true;
    return ev.evolve_series(psi0, times);
  };
  const auto d = metrology::state_derivative(factory, spec.h, opt);
  QfiSeries s;
  s.times = times;
  s.derivative_step = d.step;
  for (std::size_t k = 0; k < times.size(); ++k) s.fq.push_back(metrology::qfi_pure(d.value[k], d.derivative[k]).value);
  if (any_fallback) s.notes.emplace_back("exceptional_point_fallback");
  if (any_exponential) s.notes.emplace_back("exponential_route");
  return s;
}

double eigenstate_qfi(model::Family family, const LatticeSpec& spec, int index,
                      const metrology::DerivativeOptions& opt) {
  spec.validate();
  if (index < 0 || index >= spec.L) throw InvalidArgument("eigenstate_qfi: index outside [0, L-1]");
  metrology::PureFactory factory = [&](double h) -> CVector {
    if (h <= 0.0 && family == model::Family::Unidirectional)
      throw InvalidArgument("eigenstate_qfi: unidirectional eigenstates need h > 0");
    if (h < 0.0) throw InvalidArgument("eigenstate_qfi: finite-difference stencil crosses h = 0");
    const LatticeSpec s = with_h(spec, h);
    if (family == model::Family::Unidirectional) return spectral::unidirectional_eigvec_normalized(index, s);
    const OperatorMatrix H = model::build(family, s);
    if (H.hermitian) return spectral::eig_hermitian(H).vectors.col(index);
    return spectral::eig_biorthogonal(H).normalized_right(index);
  };
  const auto d = metrology::state_derivative(factory, spec.h, opt);
  return metrology::qfi_pure(d.value, d.derivative).value;
}

void over_t2(const QfiSeries& s, std::vector<double>& times, std::vector<double>& values) {
  times.clear();
  values.clear();
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    if (s.times[k] <= 0.0) continue;
    times.push_back(s.times[k]);
    values.push_back(s.fq[k] / (s.times[k] * s.times[k]));
  }
}

std::vector<double> uniform_times(double step, int count) {
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) t[k] = step * (k + 1);
  return t;
}

}  // namespace stark::probes
