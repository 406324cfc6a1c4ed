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

#include "stark/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stark/errors.hpp"

namespace stark::analysis {

void TimeSeries::validate() const {
  if (times.size() != values.size()) throw InvalidArgument("TimeSeries: times and values differ in length");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]) || !std::isfinite(values[k])) throw InvalidArgument("TimeSeries: non-finite entry");
    if (k > 0 && !(times[k] > times[k - 1])) throw InvalidArgument("TimeSeries: times must be strictly increasing");
  }
}

ScalingFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, Window window) {
  if (xs.size() != ys.size()) throw InvalidArgument("fit_power_law: size mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] < window.lo || xs[k] > window.hi) continue;
    if (!(xs[k] > 0.0) || !(ys[k] > 0.0)) {
      std::ostringstream os;
      os << "fit_power_law: non-positive point (" << xs[k] << ", " << ys[k] << ")";
      throw NonPositiveData(os.str());
    }
    lx.push_back(std::log(xs[k]));
    ly.push_back(std::log(ys[k]));
  }
  const auto n = static_cast<int>(lx.size());
  if (n < 4) {
    std::ostringstream os;
    os << "fit_power_law: " << n << " points in window, need at least 4";
    throw InsufficientPoints(os.str());
  }
  double mx = 0.0;
  double my = 0.0;
  for (int k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientPoints("fit_power_law: all x values coincide");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss_res = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = ly[k] - (my + fit.exponent * (lx[k] - mx));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.window = window;
  fit.points = n;
  return fit;
}

ScalingFit short_time_alpha(const TimeSeries& fq, Window window) {
  fq.validate();
  if (fq.times.empty() || fq.times.front() > window.lo || fq.times.back() < window.hi) {
    std::ostringstream os;
    os << "short_time_alpha: window [" << window.lo << ", " << window.hi << "] not covered by the series";
    throw WindowOutOfRange(os.str());
  }
  return fit_power_law(fq.times, fq.values, window);
}

Peak refine_peak(const std::vector<double>& ts, const std::vector<double>& ys) {
  if (ts.size() != ys.size() || ts.size() < 3) throw InsufficientPoints("refine_peak: need at least 3 samples");
  const auto it = std::max_element(ys.begin(), ys.end());
  const auto k = static_cast<std::size_t>(it - ys.begin());
  if (k == 0 || k + 1 == ys.size()) {
    std::ostringstream os;
    os << "refine_peak: maximum at the grid boundary (t = " << ts[k] << "); extend the grid";
    throw PeakAtBoundary(os.str());
  }
  const double x0 = ts[k - 1], x1 = ts[k], x2 = ts[k + 1];
  const double y0 = ys[k - 1], y1 = ys[k], y2 = ys[k + 1];
  // Parabola through the three points in Newton form.
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  Peak p{x1, y1, k};
  if (curv < 0.0) {
    const double t = 0.5 * (x0 + x1) - d01 / (2.0 * curv);
    if (t >= x0 && t <= x2) {
      p.t_opt = t;
      p.value = y0 + d01 * (t - x0) + curv * (t - x0) * (t - x1);
    }
  }
  return p;
}

Peak peak_qfi_over_t2(const TimeSeries& fq) {
  fq.validate();
  std::vector<double> ts;
  std::vector<double> ys;
  for (std::size_t k = 0; k < fq.times.size(); ++k) {
    if (fq.times[k] <= 0.0) continue;
    ts.push_back(fq.times[k]);
    ys.push_back(fq.values[k] / (fq.times[k] * fq.times[k]));
  }
  return refine_peak(ts, ys);
}

ScalingFit size_scaling_beta(const std::vector<double>& sizes, const std::vector<double>& peaks) {
  return fit_power_law(sizes, peaks);
}

namespace {

void check_grid(const std::vector<double>& hs, const std::map<int, std::vector<double>>& values, const char* who) {
  if (values.empty()) throw InvalidArgument(std::string(who) + ": no sizes supplied");
  for (const auto& [L, v] : values)
    if (v.size() != hs.size()) throw InvalidArgument(std::string(who) + ": value grid does not match h grid");
  for (std::size_t k = 1; k < hs.size(); ++k)
    if (!(hs[k] > hs[k - 1])) throw InvalidArgument(std::string(who) + ": h grid must be strictly increasing");
}

double relative_spread(double a, double b) { return std::abs(a - b) / (0.5 * (a + b)); }

}  // namespace

std::vector<TransitionPoint> transition_point(const std::vector<double>& hs,
                                              const std::map<int, std::vector<double>>& values, double J,
                                              double spread) {
  check_grid(hs, values, "transition_point");
  if (values.size() < 2) throw InsufficientPoints("transition_point: need at least two sizes");
  std::vector<TransitionPoint> out;
  for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
    const auto& v = it->second;
    const auto& w = std::next(it)->second;
    std::size_t first = hs.size();
    for (std::size_t k = hs.size(); k-- > 0;) {
      if (!(relative_spread(v[k], w[k]) < spread)) break;
      first = k;
    }
    if (first == hs.size() || first == 0) {
      std::ostringstream os;
      os << "transition_point: L = " << it->first << " and L = " << std::next(it)->first
         << (first == 0 ? " agree over the whole grid" : " never agree") << " within " << spread;
      throw NoTransition(os.str());
    }
    out.push_back({it->first, hs[first], 8.0 * J / it->first});
  }
  return out;
}

CollapseCheck localized_collapse_check(const std::vector<double>& hs, const std::map<int, std::vector<double>>& values,
                                       double J, double spread) {
  check_grid(hs, values, "localized_collapse_check");
  CollapseCheck out;
  if (values.size() > 1) {
    out.transitions = transition_point(hs, values, J, spread);
    for (const auto& t : out.transitions) out.h_threshold = std::max(out.h_threshold, t.h_c);
  } else {
    out.h_threshold = 8.0 * J / values.begin()->first;
  }
  std::vector<double> hx;
  std::vector<double> mean;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    if (hs[k] < out.h_threshold) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (const auto& [L, v] : values) {
      lo = std::min(lo, v[k]);
      hi = std::max(hi, v[k]);
      sum += v[k];
    }
    const double m = sum / static_cast<double>(values.size());
    if (hs[k] == out.h_threshold) {
      out.threshold_spread = (hi - lo) / m;
      continue;
    }
    out.max_spread = std::max(out.max_spread, (hi - lo) / m);
    hx.push_back(hs[k]);
    mean.push_back(m);
  }
  if (hx.size() < 4) {
    std::ostringstream os;
    os << "localized_collapse_check: " << hx.size() << " grid points beyond h = " << out.h_threshold << ", need 4";
    throw NoTransition(os.str());
  }
  out.fit = fit_power_law(hx, mean);
  return out;
}

Localization skin_localization_metric(const CVector& psi) {
  const double norm2 = psi.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-8) throw InvalidArgument("skin_localization_metric: state is not normalized");
  Localization out;
  double p4 = 0.0;
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    const double p = std::norm(psi(j));
    p4 += p * p;
    out.center_of_mass += static_cast<double>(j + 1) * p;
  }
  out.participation_ratio = 1.0 / p4;
  return out;
}

}  // namespace stark::analysis
